//! Property table for `iim analyze`.

use serde_json::{json, Map, Value};

use iim_core::clique::clique_number;
use iim_core::coloring::chromatic_number;
use iim_core::distance::{diameter, Distance};
use iim_core::domination::domination_number;
use iim_core::spectral::spectral_gap;
use iim_core::{Graph, IimError};

pub const SKIPPED_LIMIT: &str = "skipped(limit)";
pub const SKIPPED_ISOLATED: &str = "skipped(isolated)";

/// Column order shared by the JSON and CSV forms.
pub const FIELDS: [&str; 8] = ["n", "m", "isolated", "diameter", "dom", "omega", "chi", "gap"];

fn exact<T: Into<Value>>(r: iim_core::Result<T>) -> Value {
    match r {
        Ok(v) => v.into(),
        Err(IimError::SizeLimit { .. }) => SKIPPED_LIMIT.into(),
        Err(e) => format!("error({e})").into(),
    }
}

pub fn analyze(g: &Graph) -> Map<String, Value> {
    let isolated = g.isolated_vertices().len();
    let diam = match diameter(g) {
        Distance::Finite(d) => json!(d),
        Distance::Infinite => json!("infinite"),
    };
    let gap = if isolated > 0 || g.n() < 2 {
        SKIPPED_ISOLATED.into()
    } else {
        exact(spectral_gap(g))
    };
    let values = [
        json!(g.n()),
        json!(g.edge_count()),
        json!(isolated),
        diam,
        exact(domination_number(g).map(|r| r.size)),
        exact(clique_number(g).map(|r| r.0)),
        exact(chromatic_number(g).map(|r| r.0)),
        gap,
    ];
    FIELDS.iter().map(|f| f.to_string()).zip(values).collect()
}

pub fn to_json(table: &Map<String, Value>) -> String {
    let ordered: Vec<String> = FIELDS
        .iter()
        .map(|f| format!("  \"{f}\": {}", table[*f]))
        .collect();
    format!("{{\n{}\n}}", ordered.join(",\n"))
}

pub fn to_csv(table: &Map<String, Value>) -> String {
    let row: Vec<String> = FIELDS
        .iter()
        .map(|f| match &table[*f] {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        })
        .collect();
    format!("{}\n{}\n", FIELDS.join(","), row.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_complete() {
        let t = analyze(&Graph::path(4));
        assert_eq!((t["diameter"].clone(), t["dom"].clone()), (json!(3), json!(2)));
        assert_eq!((t["omega"].clone(), t["chi"].clone()), (json!(2), json!(2)));
        let t = analyze(&Graph::complete(4));
        assert_eq!(t["omega"], json!(4));
        assert!((t["gap"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn isolated_and_oversized() {
        let t = analyze(&Graph::empty(2));
        assert_eq!(t["gap"], json!(SKIPPED_ISOLATED));
        assert_eq!(t["diameter"], json!("infinite"));
        let t = analyze(&Graph::cycle(45));
        assert_eq!(t["dom"], json!(SKIPPED_LIMIT));
        assert_eq!(t["chi"], json!(SKIPPED_LIMIT));
        assert_eq!(t["omega"], json!(2));
    }

    #[test]
    fn csv_has_header_and_row() {
        let csv = to_csv(&analyze(&Graph::empty(2)));
        assert_eq!(csv, "n,m,isolated,diameter,dom,omega,chi,gap\n2,0,2,infinite,2,1,1,skipped(isolated)\n");
    }
}
