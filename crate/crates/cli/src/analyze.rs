use positroid::chirotope::Chirotope;
use positroid::io::{self, Kind};
use positroid::positroid::{
    component_partition_check, da_silva_criterion, grassmann_necklace, indicator_chirotope, is_circular,
    is_positroid,
};
use positroid::Matroid;
use serde_json::{json, Value};

pub fn analyze_text(text: &str) -> Result<Value, io::IoError> {
    let v = io::parse(text)?;
    match io::detect(&v)? {
        Kind::Matroid => Ok(matroid_report(&io::matroid_from_json(&v)?)),
        Kind::Chirotope => Ok(chirotope_report(&io::chirotope_from_json(&v)?)),
        Kind::Matrix => {
            let a = io::matrix_from_json(&v)?;
            let chi = a.chirotope()?;
            let mut report = chirotope_report(&chi);
            report["kind"] = json!("matrix");
            report["matrix"] = io::matrix_to_json(&a);
            report["totally_nonnegative"] = json!(a.is_totally_nonnegative());
            Ok(report)
        }
    }
}

/// Positroid tests need the full ground set, so minors are read on their
/// inherited order.
pub fn matroid_report(m: &Matroid) -> Value {
    let full = m.reindexed();
    let necklace = grassmann_necklace(m);
    let indicator = indicator_chirotope(&full);
    json!({
        "kind": "matroid",
        "matroid": io::matroid_to_json(m),
        "rank": m.rank(),
        "bases_count": m.bases().len(),
        "circuits": m.circuits(),
        "cocircuits": m.cocircuits(),
        "components": component_partition_check(&full),
        "grassmann_necklace": necklace,
        "positroid": is_positroid(m),
        "da_silva": da_silva_criterion(&full),
        "circular": is_circular(&full),
        "positively_orientable": {
            "indicator_chirotope": indicator.is_ok(),
            "gp_witness": indicator.err(),
        },
    })
}

pub fn chirotope_report(chi: &Chirotope) -> Value {
    let m = chi.underlying_matroid();
    let mut report = matroid_report(&m);
    report["kind"] = json!("chirotope");
    report["chirotope"] = io::chirotope_to_json(chi);
    report["signed_circuits"] = json!(chi.signed_circuits().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let reorientation = chi.positive_reorientation();
    report["positively_orientable"] = json!({
        "holds": reorientation.is_some(),
        "reorientation": reorientation.map(|r| r.flipped),
    });
    report
}
