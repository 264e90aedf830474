use std::fmt::Write as _;

use super::AtlasEntry;
use crate::classify::ClassificationReport;
use crate::error::{Error, Result};
use crate::linal::GateMatrix;

pub const CSV_HEADER: [&str; 5] = ["class", "name", "gates", "order", "projective_id"];

fn sorted<'a>(entries: &[&'a AtlasEntry]) -> Vec<&'a AtlasEntry> {
    let mut v = entries.to_vec();
    v.sort_by(|a, b| a.name.cmp(&b.name));
    v
}

/// One row per entry, ordered by name.
pub fn export_csv(entries: &[&AtlasEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for e in sorted(entries) {
        w.write_record([
            e.family.class_name(),
            &e.name,
            &e.generators,
            &e.expected.order_string(),
            e.external_ids.projective_gap.as_deref().unwrap_or(""),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// Pretty-printed JSON array, ordered by name.
pub fn export_json(reports: &[ClassificationReport]) -> Result<String> {
    let mut v: Vec<&ClassificationReport> = reports.iter().collect();
    v.sort_by(|a, b| a.name.cmp(&b.name));
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn gap_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn gap_matrix(m: &GateMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|c| c.to_gap()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

const GAP_PRELUDE: &str = r#"# Rebuilds each catalog group from exact matrices and checks its order
# and identification.
failures := 0;;

MatchesId := function(G, id)
    local v;
    if id = "" then
        return true;
    fi;
    if id[1] = '[' then
        return IdGroup(G) = EvalString(id);
    elif id[1] = '(' then
        v := EvalString(Concatenation("[", id{[2 .. Length(id) - 1]}, "]"));
        return PerfectIdentification(G) = v;
    fi;
    return IsomorphismGroups(G, EvalString(id)) <> fail;
end;;

ProjectiveImage := function(G)
    local Z;
    Z := Filtered(Elements(Centre(G)), z -> IsDiagonalMat(z) and Length(Set(DiagonalOfMat(z))) = 1);
    return Image(NaturalHomomorphismByNormalSubgroup(G, Group(Z, One(G))));
end;;

Check := function(name, gens, order, gapid, projid)
    local G, ok;
    G := Group(gens);
    ok := Size(G) = order and MatchesId(G, gapid) and MatchesId(ProjectiveImage(G), projid);
    if ok then
        Print("PASS ", name, "\n");
    else
        Print("FAIL ", name, "\n");
        failures := failures + 1;
    fi;
end;;

"#;

/// A GAP script that reconstructs every entry and asserts its order and
/// recorded identifiers.
pub fn export_gap_script(entries: &[&AtlasEntry]) -> Result<String> {
    let mut out = String::from(GAP_PRELUDE);
    for e in sorted(entries) {
        let gens = e.generator_matrices()?;
        let mats: Vec<String> = gens.iter().map(gap_matrix).collect();
        let ids = &e.external_ids;
        writeln!(
            out,
            "Check({}, [{}], {}, {}, {});",
            gap_string(&e.name),
            mats.join(",\n    "),
            e.expected.order,
            gap_string(ids.gap.as_deref().unwrap_or("")),
            gap_string(ids.projective_gap.as_deref().unwrap_or("")),
        )
        .expect("writing to a String");
    }
    out.push_str("Print(\"failures: \", failures, \"\\n\");\nQUIT_GAP(failures);\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{all_entries, entry, Filter};

    #[test]
    fn csv_has_one_row_per_pauli_entry() {
        let text = export_csv(&all_entries(Filter::PauliClifford)).unwrap();
        let mut r = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
        assert_eq!(r.records().count(), 56);
    }

    #[test]
    fn gap_matrix_for_s() {
        let s = crate::gates::constant("S").unwrap();
        let g = gap_matrix(&s);
        assert!(g.starts_with("[[") && g.contains("E(8)"), "{g}");
    }

    #[test]
    fn gap_script_lists_every_entry() {
        let es = [entry("P2").unwrap(), entry("C2").unwrap()];
        let script = export_gap_script(&es).unwrap();
        assert_eq!(script.matches("\nCheck(").count(), 2);
        assert!(script.contains("MatchesId"));
    }
}
