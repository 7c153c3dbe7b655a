//! JSON payload builders. All numbers are exact: machine integers stay
//! JSON numbers, rationals become `"num/den"` strings (plain `"num"` when
//! the denominator is 1), Gaussian integers become `"a+bi"` strings, and
//! `Q(i)` scalars become `{"re": ..., "im": ...}` objects of rational
//! strings. The one floating field is the crosscheck error.

use hurwitz442_core::gaussian::{gauss_to_string, ResidueSystem};
use hurwitz442_core::galois::GaloisStructureReport;
use hurwitz442_core::perm::{CoverCertificate, Perm, VerificationReport};
use hurwitz442_core::poly::PolyQi;
use hurwitz442_core::pqr::{CoverMapData, PqrReport};
use hurwitz442_core::qi::{rational_string, QiScalar};
use hurwitz442_core::search::{SearchOutcome, SurveyRow};
use serde_json::{json, Value};

pub fn perm_images(p: &Perm) -> Value {
    json!(p.images())
}

pub fn report_json(report: &VerificationReport) -> Value {
    json!({
        "product": report.product,
        "types": report.types,
        "transitive": report.transitive,
        "riemann_hurwitz": report.riemann_hurwitz,
        "group_order": report.group_order,
    })
}

pub fn certificate_json(cert: &CoverCertificate, report: &VerificationReport) -> Value {
    json!({
        "d": cert.d,
        "k": cert.k,
        "sigma0": perm_images(&cert.sigma0),
        "sigma1": perm_images(&cert.sigma1),
        "sigmaInf": perm_images(&cert.sigma_inf),
        "provenance": cert.provenance.as_str(),
        "report": report_json(report),
    })
}

pub fn residues_json(residues: &ResidueSystem) -> Value {
    Value::Array(
        residues
            .reps()
            .iter()
            .map(|z| Value::String(gauss_to_string(z)))
            .collect(),
    )
}

pub fn qi_json(c: &QiScalar) -> Value {
    json!({
        "re": rational_string(&c.re),
        "im": rational_string(&c.im),
    })
}

pub fn poly_json(p: &PolyQi) -> Value {
    Value::Array(p.coeffs().iter().map(qi_json).collect())
}

pub fn pqr_json(data: &CoverMapData, report: &PqrReport, crosscheck_err: Option<f64>) -> Value {
    json!({
        "d": data.d,
        "k": data.k,
        "P": poly_json(&data.triple.p),
        "Q": poly_json(&data.triple.q),
        "R": poly_json(&data.triple.r),
        "cP": qi_json(&data.triple.c_p),
        "cQ": qi_json(&data.triple.c_q),
        "checks": {
            "identity": report.identity,
            "squarefree": report.squarefree,
            "pairwise_coprime": report.pairwise_coprime,
            "degrees": report.degrees,
            "max_term_degree": report.max_term_degree,
            "distinct_roots": report.distinct_roots,
            "mason_stothers_extremal": report.mason_stothers_extremal,
            "crosscheck_error": crosscheck_err,
        },
    })
}

pub fn galois_json(a: i64, b: i64, r: &GaloisStructureReport) -> Value {
    json!({
        "a": a,
        "b": b,
        "d": r.d,
        "order": r.order,
        "order_is_8d": r.order_is_8d,
        "gamma_is_delta_translation": r.gamma_is_delta_translation,
        "gamma_central": r.gamma_central,
        "translation_order": r.translation_order,
        "translation_order_is_2d": r.translation_order_is_2d,
        "translations_are_kernel_and_delta": r.translations_are_kernel_and_delta,
        "linear_part_surjective": r.linear_part_surjective,
        "quotient_order": r.quotient_order,
        "quotient_order_is_4d": r.quotient_order_is_4d,
        "lattice_group_order": r.lattice_group_order,
        "quotient_matches_lattice": r.quotient_matches_lattice,
        "all_pass": r.all_pass(),
    })
}

pub fn search_json(d: u64, outcome: &SearchOutcome, elapsed_ms: f64) -> Value {
    let cert = outcome.certificate.as_ref().map(|c| {
        let report = c.verify();
        certificate_json(c, &report)
    });
    json!({
        "d": d,
        "status": outcome.status.as_str(),
        "nodes_explored": outcome.nodes_explored,
        "elapsed_ms": elapsed_ms,
        "certificate": cert,
    })
}

pub fn survey_row_json(row: &SurveyRow) -> Value {
    json!({
        "d": row.d,
        "representable": !row.representations.is_empty(),
        "representations": row.representations,
        "lattice_valid": row.lattice_valid,
        "lattice_order_is_4d": row.lattice_order_is_4d,
        "prime_valid": row.prime_valid,
        "search": row.search_status.map(|s| s.as_str()),
        "search_nodes": row.search_nodes,
        "consistent": row.consistent,
    })
}

pub fn survey_json(dmin: u64, dmax: u64, search_cap: u64, rows: &[SurveyRow]) -> Value {
    let inconsistencies = rows.iter().filter(|r| !r.consistent).count();
    json!({
        "dmin": dmin,
        "dmax": dmax,
        "search_cap": search_cap,
        "rows": rows.iter().map(survey_row_json).collect::<Vec<_>>(),
        "inconsistencies": inconsistencies,
    })
}
