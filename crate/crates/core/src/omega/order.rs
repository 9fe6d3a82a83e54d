//! The degeneration order on patterns.
//!
//! `a ⪯ b` when `b` arises from `a` by resolving every entry `m` of `a`
//! independently into a contiguous run of real multiplicities whose sum is at
//! most `m` and has the parity of `m`; the missing degree escapes as complex
//! conjugate pairs. An even entry may disappear entirely. Resolution never
//! increases the reduced norm, so the more degenerate pattern is the smaller one.

use super::Pattern;

pub fn leq(a: &Pattern, b: &Pattern) -> bool {
    resolves_to(a.entries(), b.entries())
}

/// `leq` on bare words; the empty word is allowed on either side.
pub fn resolves_to(a: &[u32], b: &[u32]) -> bool {
    // reach[j]: the prefix of `a` processed so far can produce b[..j]
    let mut reach = vec![false; b.len() + 1];
    reach[0] = true;
    for &m in a {
        let mut next = vec![false; b.len() + 1];
        for j in 0..=b.len() {
            if !reach[j] {
                continue;
            }
            let mut sum = 0u32;
            let mut end = j;
            loop {
                if sum % 2 == m % 2 {
                    next[end] = true;
                }
                if end == b.len() {
                    break;
                }
                sum += b[end];
                end += 1;
                if sum > m {
                    break;
                }
            }
        }
        reach = next;
    }
    reach[b.len()]
}

pub fn lt(a: &Pattern, b: &Pattern) -> bool {
    a != b && leq(a, b)
}

/// Avoidance of the down-sets of `(3,3)` and `(4)`: no entry above 3 and at
/// most one entry equal to 3.
pub fn is_smoothly_reconstructible(omega: &Pattern) -> bool {
    omega.max_entry() <= 3 && omega.entries().iter().filter(|&&m| m >= 3).count() <= 1
}
