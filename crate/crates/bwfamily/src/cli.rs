//! Command implementations and rendering.
//!
//! Exit-code policy: 0 for success, 1 for a negative mathematical verdict
//! (a candidate fails a condition, a scan finds nothing, a certification
//! does not certify), 2 for usage or parse errors, 3 for internal
//! inconsistencies (a registry family the constructor cannot reproduce).
//! A failed mathematical check is never a usage error: it still prints a
//! full diagnosis payload.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use bwfamily::family::{
    bw_construct, forced_q_obstruction, validate, FamilyCandidate, FamilyDiagnosis, Verdict,
    CONDITION_NAMES,
};
use bwfamily::instantiate::{scan_bits, scan_range, ScanReport};
use bwfamily::poly::QPoly;
use bwfamily::registry::{builtin, builtin_names, FamilyDocument};
use bwfamily::ring::{ResidueRing, RingError, ZetaImage};
use bwfamily::search::run_catalog_scan;
use bwfamily::{cyclo, rational::format_rational};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

/// What a command hands back to `main`.
pub struct CommandResult {
    pub code: u8,
    pub payload: String,
}

fn ok(payload: String) -> CommandResult {
    CommandResult {
        code: EXIT_OK,
        payload,
    }
}

fn negative(payload: String) -> CommandResult {
    CommandResult {
        code: EXIT_NEGATIVE,
        payload,
    }
}

fn usage(payload: String) -> CommandResult {
    CommandResult {
        code: EXIT_USAGE,
        payload,
    }
}

fn internal(payload: String) -> CommandResult {
    CommandResult {
        code: EXIT_INTERNAL,
        payload,
    }
}

pub fn cmd_cyclotomic(k: u64) -> CommandResult {
    if k < 1 {
        return usage("k must be at least 1".into());
    }
    ok(cyclo::cyclotomic(k).to_string())
}

pub fn cmd_construct(
    r_text: &str,
    zeta_text: &str,
    k: u64,
    d: u64,
    sqrt_text: Option<&str>,
    json_out: bool,
) -> CommandResult {
    let r: QPoly = match r_text.parse() {
        Ok(p) => p,
        Err(e) => return usage(format!("cannot parse r: {e}")),
    };
    let zeta_poly: QPoly = match zeta_text.parse() {
        Ok(p) => p,
        Err(e) => return usage(format!("cannot parse zeta: {e}")),
    };
    let sqrt_poly: Option<QPoly> = match sqrt_text.map(str::parse).transpose() {
        Ok(p) => p,
        Err(e) => return usage(format!("cannot parse sqrt: {e}")),
    };

    let ring = match ResidueRing::new(r) {
        Ok(ring) => ring,
        Err(e @ RingError::ConstantModulus) => return usage(e.to_string()),
        Err(e) => return negative(e.to_string()),
    };
    let z = match ZetaImage::new(k, ring.element(&zeta_poly)) {
        Ok(z) => z,
        Err(e) => return negative(e.to_string()),
    };
    let sqrt_elem = sqrt_poly.map(|p| ring.element(&p));
    let candidate = match bw_construct(k, d, &ring, &z, sqrt_elem.as_ref()) {
        Ok(c) => c,
        Err(e) => return negative(e.to_string()),
    };
    let diagnosis = validate(&candidate);
    let code = if diagnosis.is_complete_family {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let payload = if json_out {
        pretty(&json!({
            "family": document_value(&candidate, None),
            "diagnosis": diagnosis_value(&diagnosis),
        }))
    } else {
        let mut out = render_candidate(&candidate);
        out.push('\n');
        out.push_str(&render_diagnosis(&diagnosis));
        out
    };
    CommandResult { code, payload }
}

pub fn cmd_validate(family: &str, json_out: bool) -> CommandResult {
    let doc = match load_document(family) {
        Ok(doc) => doc,
        Err(msg) => return usage(msg),
    };
    let candidate = match doc.to_candidate_unchecked() {
        Ok(c) => c,
        Err(e) => return usage(format!("cannot interpret document: {e}")),
    };
    let diagnosis = validate(&candidate);
    let code = if diagnosis.is_complete_family {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let payload = if json_out {
        pretty(&json!({
            "family": document_value(&candidate, doc.name.as_deref()),
            "diagnosis": diagnosis_value(&diagnosis),
        }))
    } else {
        let mut out = render_candidate(&candidate);
        out.push('\n');
        out.push_str(&render_diagnosis(&diagnosis));
        out
    };
    CommandResult { code, payload }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_instantiate(
    family: &str,
    x_start: Option<&str>,
    x_end: Option<&str>,
    bits: Option<u32>,
    count: Option<usize>,
    seed: u64,
    json_out: bool,
) -> CommandResult {
    let doc = match load_document(family) {
        Ok(doc) => doc,
        Err(msg) => return usage(msg),
    };
    let candidate = match doc.to_candidate() {
        Ok(c) => c,
        Err(e) => return usage(format!("family document is not usable: {e}")),
    };

    let mut report: ScanReport = match (x_start, x_end, bits, count) {
        (Some(lo), Some(hi), None, None) => {
            let lo: BigInt = match lo.parse() {
                Ok(v) => v,
                Err(_) => return usage(format!("cannot parse --x-start value {lo:?}")),
            };
            let hi: BigInt = match hi.parse() {
                Ok(v) => v,
                Err(_) => return usage(format!("cannot parse --x-end value {hi:?}")),
            };
            if lo > hi {
                return usage("--x-start must not exceed --x-end".into());
            }
            scan_range(&candidate, &lo, &hi, seed)
        }
        (None, None, Some(bits), Some(count)) => {
            if bits < 8 {
                return usage("--bits must be at least 8".into());
            }
            if count == 0 {
                return usage("--count must be at least 1".into());
            }
            scan_bits(&candidate, bits, count, seed)
        }
        _ => return usage("pass either --x-start with --x-end, or --bits with --count".into()),
    };
    report.family = doc.name.clone().or_else(|| Some(family.to_string()));

    let code = if report.hits.is_empty() {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    let payload = if json_out {
        pretty(&report.to_json())
    } else {
        render_scan_report(&report)
    };
    CommandResult { code, payload }
}

pub fn cmd_reproduce(target: &str, json_out: bool) -> CommandResult {
    match target {
        "bn" | "example-k4-d2" | "example-k6-d1" => reproduce_registry(target, json_out),
        "theorem1" => reproduce_theorem1(json_out),
        "theorem3-scan" => reproduce_theorem3(json_out),
        other => usage(format!(
            "unknown target {other:?}; expected one of bn, example-k4-d2, example-k6-d1, theorem1, theorem3-scan"
        )),
    }
}

/// Rebuilds a registry family from its (k, D, r, zeta) inputs and diffs the
/// result against the stored document.
fn reproduce_registry(name: &str, json_out: bool) -> CommandResult {
    let doc = builtin(name).expect("caller checked the name");
    let stored = match doc.to_candidate_unchecked() {
        Ok(c) => c,
        Err(e) => return internal(format!("registry document unreadable: {e}")),
    };
    let ring = match ResidueRing::new(stored.r.clone()) {
        Ok(r) => r,
        Err(e) => return internal(format!("registry r not usable: {e}")),
    };
    let zeta_poly = &stored.t - &QPoly::one();
    let z = match ZetaImage::new(stored.k, ring.element(&zeta_poly)) {
        Ok(z) => z,
        Err(e) => return internal(format!("registry zeta image invalid: {e}")),
    };
    let rebuilt = match bw_construct(stored.k, stored.d, &ring, &z, None) {
        Ok(c) => c,
        Err(e) => return internal(format!("constructor failed on registry inputs: {e}")),
    };

    let mut diffs = Vec::new();
    for (field, a, b) in [
        ("t", &rebuilt.t, &stored.t),
        ("r", &rebuilt.r, &stored.r),
        ("q", &rebuilt.q, &stored.q),
        ("y", &rebuilt.y, &stored.y),
        ("h", &rebuilt.h, &stored.h),
    ] {
        if a != b {
            diffs.push(format!("{field}: reconstructed {a} != registry {b}"));
        }
    }
    if json_out {
        let value = json!({
            "target": name,
            "matches": diffs.is_empty(),
            "differences": diffs,
            "reconstructed": document_value(&rebuilt, Some(name)),
        });
        let code = if diffs.is_empty() {
            EXIT_OK
        } else {
            EXIT_INTERNAL
        };
        return CommandResult {
            code,
            payload: pretty(&value),
        };
    }
    if diffs.is_empty() {
        ok(format!("reconstructed = registry for {name}"))
    } else {
        internal(format!(
            "reconstruction differs from registry for {name}:\n{}",
            diffs.join("\n")
        ))
    }
}

fn reproduce_theorem1(json_out: bool) -> CommandResult {
    let mut all_certified = true;
    let mut text = String::new();
    let mut values = Vec::new();
    for k in [3u64, 4, 6] {
        let ob = forced_q_obstruction(k).expect("k is supported");
        all_certified &= ob.certified;
        if json_out {
            values.push(json!({
                "k": k,
                "supersingular_form": ob.forced.supersingular.to_string(),
                "supersingular_root": ob.supersingular_root.to_string(),
                "supersingular_constant": format_rational(&ob.supersingular_constant),
                "supersingular_reducible": ob.supersingular_reducible,
                "noncyclotomic_form": ob.forced.noncyclotomic.to_string(),
                "residue_table_mod_4": ob
                    .residue_table
                    .iter()
                    .map(|&(a, v)| json!([a, v]))
                    .collect::<Vec<_>>(),
                "never_integral": ob.never_integral,
                "certified": ob.certified,
            }));
        } else {
            let _ = writeln!(text, "k = {k}");
            let _ = writeln!(
                text,
                "  cyclotomic-sqrt branch: q = {} = {} * ({})^2 -> {}",
                ob.forced.supersingular,
                format_rational(&ob.supersingular_constant),
                ob.supersingular_root,
                if ob.supersingular_reducible {
                    "constant * square, not irreducible"
                } else {
                    "NOT CERTIFIED"
                }
            );
            let _ = writeln!(
                text,
                "  forced q without that sqrt: {}",
                ob.forced.noncyclotomic
            );
            let table = ob
                .residue_table
                .iter()
                .map(|&(a, v)| format!("X={a}: {v}"))
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(text, "  numerator mod 4 by residue: {{{table}}}");
            let _ = writeln!(
                text,
                "  integer values: {}",
                if ob.never_integral {
                    "none (no residue gives 0 mod 4)"
                } else {
                    "EXIST - NOT CERTIFIED"
                }
            );
        }
    }
    let code = if all_certified {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let payload = if json_out {
        pretty(&json!({
            "target": "theorem1",
            "certified": all_certified,
            "obstructions": values,
        }))
    } else {
        let _ = write!(
            text,
            "verdict: {}",
            if all_certified {
                "no ideal family is possible at k = 3, 4, 6 on either branch"
            } else {
                "certification incomplete"
            }
        );
        text
    };
    CommandResult { code, payload }
}

fn reproduce_theorem3(json_out: bool) -> CommandResult {
    let results = match run_catalog_scan() {
        Ok(r) => r,
        Err(e) => return internal(format!("catalog construction failed: {e}")),
    };
    if results.len() < 12 {
        return internal(format!(
            "catalog too small: {} candidates, expected at least 12",
            results.len()
        ));
    }
    let ideal: Vec<_> = results.iter().filter(|r| r.diagnosis.is_ideal).collect();
    let code = if ideal.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    if json_out {
        let entries: Vec<Value> = results
            .iter()
            .map(|res| {
                json!({
                    "label": res.entry.label,
                    "k": res.entry.k,
                    "D": res.entry.d,
                    "r": res.candidate.r.to_string(),
                    "rho": res.diagnosis.rho.as_ref().map(format_rational),
                    "complete": res.diagnosis.is_complete_family,
                    "ideal": res.diagnosis.is_ideal,
                })
            })
            .collect();
        return CommandResult {
            code,
            payload: pretty(&json!({
                "target": "theorem3-scan",
                "candidates": entries,
                "ideal_found": ideal.len(),
            })),
        };
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "catalog of {} candidates with deg r != 2 deg t:",
        results.len()
    );
    for res in &results {
        let rho = res
            .diagnosis
            .rho
            .as_ref()
            .map(format_rational)
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "  {:32} rho = {:4}  complete = {:5}  ideal = {}",
            res.entry.label, rho, res.diagnosis.is_complete_family, res.diagnosis.is_ideal
        );
    }
    let _ = write!(
        text,
        "verdict: {}",
        if ideal.is_empty() {
            "no ideal complete family in the catalog"
        } else {
            "IDEAL FAMILY FOUND - unexpected"
        }
    );
    CommandResult {
        code,
        payload: text,
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn load_document(family: &str) -> Result<FamilyDocument, String> {
    if let Some(doc) = builtin(family) {
        return Ok(doc);
    }
    let text = std::fs::read_to_string(family).map_err(|e| {
        format!(
            "{family:?} is neither a registry name ({}) nor a readable file: {e}",
            builtin_names().join(", ")
        )
    })?;
    FamilyDocument::from_json(&text).map_err(|e| format!("malformed family document: {e}"))
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON value prints")
}

fn document_value(c: &FamilyCandidate, name: Option<&str>) -> Value {
    let doc = FamilyDocument::from_candidate(c, name.map(String::from));
    serde_json::to_value(&doc).expect("document serializes")
}

fn diagnosis_value(diag: &FamilyDiagnosis) -> Value {
    let conditions: Vec<Value> = CONDITION_NAMES
        .iter()
        .zip(diag.conditions.iter())
        .map(|(name, verdict)| {
            let (status, witness) = match verdict {
                Verdict::Holds => ("pass", None),
                Verdict::Fails(w) => ("fail", Some(w.to_string())),
                Verdict::Unknown(msg) => ("unknown", Some(msg.clone())),
            };
            json!({
                "condition": name,
                "status": status,
                "witness": witness,
            })
        })
        .collect();
    json!({
        "conditions": conditions,
        "rho": diag.rho.as_ref().map(format_rational),
        "degrees": {
            "t": diag.degrees.t,
            "r": diag.degrees.r,
            "q": diag.degrees.q,
            "y": diag.degrees.y,
            "h": diag.degrees.h,
        },
        "stored_y_consistent": diag.stored_y_consistent,
        "stored_h_consistent": diag.stored_h_consistent,
        "complete_family": diag.is_complete_family,
        "ideal": diag.is_ideal,
    })
}

fn render_candidate(c: &FamilyCandidate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family k = {}, D = {}", c.k, c.d);
    let _ = writeln!(out, "  t = {}", c.t);
    let _ = writeln!(out, "  r = {}", c.r);
    let _ = writeln!(out, "  q = {}", c.q);
    let _ = writeln!(out, "  y = {}", c.y);
    let _ = write!(out, "  h = {}", c.h);
    out
}

fn render_diagnosis(diag: &FamilyDiagnosis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "conditions:");
    for (name, verdict) in CONDITION_NAMES.iter().zip(diag.conditions.iter()) {
        let _ = writeln!(out, "  {name}: {verdict}");
    }
    let rho = diag
        .rho
        .as_ref()
        .map(format_rational)
        .unwrap_or_else(|| "-".into());
    let _ = writeln!(out, "rho = {rho}");
    let fmt_deg = |d: Option<usize>| d.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    let _ = writeln!(
        out,
        "degrees: t={} r={} q={} y={} h={}",
        fmt_deg(diag.degrees.t),
        fmt_deg(diag.degrees.r),
        fmt_deg(diag.degrees.q),
        fmt_deg(diag.degrees.y),
        fmt_deg(diag.degrees.h),
    );
    if !diag.stored_y_consistent {
        let _ = writeln!(out, "note: stored y does not satisfy D y^2 = 4q - t^2");
    }
    if !diag.stored_h_consistent {
        let _ = writeln!(out, "note: stored h does not equal (q + 1 - t)/r");
    }
    let _ = writeln!(
        out,
        "complete family: {}",
        if diag.is_complete_family { "yes" } else { "no" }
    );
    let _ = write!(out, "ideal: {}", if diag.is_ideal { "yes" } else { "no" });
    out
}

fn render_scan_report(report: &ScanReport) -> String {
    let mut out = String::new();
    let windows = report
        .windows
        .iter()
        .map(|(lo, hi)| format!("[{lo}, {hi}]"))
        .collect::<Vec<_>>()
        .join(" u ");
    let _ = writeln!(
        out,
        "scan of {} over {} (seed {})",
        report.family.as_deref().unwrap_or("family"),
        if windows.is_empty() {
            "(empty)"
        } else {
            &windows
        },
        report.seed
    );
    let _ = writeln!(out, "hits: {}", report.hits.len());
    for hit in &report.hits {
        let _ = writeln!(
            out,
            "  x0 = {}: t = {}, r = {}, q = {}, y = {}, h = {}",
            hit.x0, hit.t0, hit.r0, hit.q0, hit.y0, hit.h0
        );
        let _ = writeln!(
            out,
            "    rho = {:.4}, k bound ok = {}, supersingular boundary = {}, primality = {:?}",
            hit.rho_numeric, hit.k_bound_ok, hit.supersingular_boundary, hit.primality
        );
    }
    if !report.near_misses.is_empty() {
        let _ = writeln!(out, "near misses:");
        for (reason, count) in &report.near_misses {
            let _ = writeln!(out, "  {reason}: {count}");
        }
    }
    let _ = writeln!(out, "skipped by profile: {}", report.skipped_by_profile);
    let _ = write!(out, "scanned: {}", report.scanned);
    out
}
