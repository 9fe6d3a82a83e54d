use std::fmt::Write as _;

use super::{is_trajectory_type, lt, OmegaError, Pattern};

pub const MAX_POSET_BOUND: u32 = 6;

/// The trajectory types of reduced norm at most `bound`, with the cover
/// relation of the degeneration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetView {
    pub bound: u32,
    /// Sorted by reduced norm, then norm, then entries.
    pub elements: Vec<Pattern>,
    /// `(a, b)` indices into `elements` with `a ≺ b` a cover.
    pub covers: Vec<(usize, usize)>,
}

fn sort_key(p: &Pattern) -> (u32, u32, Vec<u32>) {
    (p.reduced_norm(), p.norm(), p.entries().to_vec())
}

/// All patterns (not only trajectory types) with reduced norm at most `bound`
/// and at most `bound + 2` entries.
fn patterns_within(bound: u32) -> Vec<Pattern> {
    fn rec(prefix: &mut Vec<u32>, budget: u32, max_len: usize, out: &mut Vec<Pattern>) {
        if !prefix.is_empty() {
            out.push(Pattern::new(prefix.clone()).expect("positive entries"));
        }
        if prefix.len() == max_len {
            return;
        }
        for m in 1..=budget + 1 {
            prefix.push(m);
            rec(prefix, budget - (m - 1), max_len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), bound, bound as usize + 2, &mut out);
    out
}

pub fn enumerate_poset(bound: u32) -> Result<PosetView, OmegaError> {
    if bound > MAX_POSET_BOUND {
        return Err(OmegaError::BoundExceeded {
            requested: bound,
            max: MAX_POSET_BOUND,
        });
    }
    let mut elements: Vec<Pattern> = patterns_within(bound)
        .into_iter()
        .filter(|p| is_trajectory_type(p, bound))
        .collect();
    elements.sort_by_key(sort_key);
    elements.dedup();

    let n = elements.len();
    let below: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| lt(&elements[i], &elements[j])).collect())
        .collect();
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if below[a][b] && !(0..n).any(|c| below[a][c] && below[c][b]) {
                covers.push((a, b));
            }
        }
    }
    Ok(PosetView {
        bound,
        elements,
        covers,
    })
}

impl PosetView {
    pub fn maximal_elements(&self) -> Vec<&Pattern> {
        (0..self.elements.len())
            .filter(|&i| !self.covers.iter().any(|&(a, _)| a == i))
            .map(|i| &self.elements[i])
            .collect()
    }

    /// Plain listing: one line per element, then one line per cover.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "poset n={} elements={} covers={}",
            self.bound,
            self.elements.len(),
            self.covers.len()
        );
        for p in &self.elements {
            let _ = writeln!(out, "{} norm={} reduced={}", p, p.norm(), p.reduced_norm());
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "{} < {}", self.elements[a], self.elements[b]);
        }
        out
    }
}

/// Hasse diagram in DOT, nodes ranked by reduced norm, edges drawn from the
/// smaller (more degenerate) element to the larger.
pub fn export_hasse(view: &PosetView) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph poset_{} {{", view.bound);
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    for p in &view.elements {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"({})\\n|w|={} |w|'={}\"];",
            p,
            p.to_list_string(),
            p.norm(),
            p.reduced_norm()
        );
    }
    let max_rank = view.elements.iter().map(|p| p.reduced_norm()).max().unwrap_or(0);
    for rank in 0..=max_rank {
        let names: Vec<String> = view
            .elements
            .iter()
            .filter(|p| p.reduced_norm() == rank)
            .map(|p| format!("\"{p}\";"))
            .collect();
        if !names.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {} }}", names.join(" "));
        }
    }
    for &(a, b) in &view.covers {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", view.elements[a], view.elements[b]);
    }
    out.push_str("}\n");
    out
}
