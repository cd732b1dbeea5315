//! Stable text fragments shared by the report verbs.

use std::collections::BTreeMap;

use graded_brauer::abelian::FgGroup;
use graded_brauer::point::BrauerType;
use graded_brauer::smith::Int;

/// Compact group format for `RESULT:` lines: `Z8`, `Z4 x Z8`, `Z^2 x Z12`, `0`.
pub fn compact_group(g: &FgGroup) -> String {
    if g.is_trivial() {
        return "0".into();
    }
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in &g.invariant_factors {
        parts.push(format!("Z{d}"));
    }
    parts.join(" x ")
}

/// The label column of the eight-type table: `[parity;epsilon,sign]`.
pub fn type_label(t: BrauerType) -> String {
    format!("[{};{},{}]", t.parity(), t.epsilon(), if t.eta() > 0 { '+' } else { '-' })
}

/// `1^1 2^1 4^2 8^4` for an order-multiplicity map.
pub fn spectrum_line(s: &BTreeMap<u64, usize>) -> String {
    s.iter().map(|(o, k)| format!("{o}^{k}")).collect::<Vec<_>>().join(" ")
}

/// Class coordinates: `[1,0,2]`, `[]` when the group is trivial.
pub fn coords(v: &[Int]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// Space-joined integer row, the table format of extension files.
pub fn row(v: &[Int]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
