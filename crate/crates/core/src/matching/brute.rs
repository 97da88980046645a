//! Exhaustive oracles, independent of the double-cover route.

use serde::{Deserialize, Serialize};

use super::MatchingError;
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_BRUTE_CAP: usize = 24;
const MATCHING_CAP: usize = 16;

/// A set `S` maximizing `i(G - S) - |S|`, together with the isolated set
/// `T` of `G - S` and the number of `S`-`T` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyWitness {
    pub s: VertexSet,
    pub t: VertexSet,
    pub s_size: usize,
    pub isolated: usize,
    pub crossing_edges: usize,
    pub deficiency: usize,
}

/// `true` iff the sorted member list of `a` is lexicographically smaller
/// than that of `b`.
fn lex_less(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let d = (a ^ b).trailing_zeros();
    let above = if d == 63 { 0 } else { !0u64 << (d + 1) };
    if a >> d & 1 == 1 {
        // a has d next; b has either something larger or nothing
        b & above != 0
    } else {
        a & above == 0
    }
}

/// Maximum of `i(G - S) - |S|` over all `S`, by a Gray-code walk over every
/// subset with incremental isolated-vertex counts. Ties go to the
/// lexicographically least `S`.
pub fn brute_force_deficiency(g: &Graph, cap: usize) -> Result<DeficiencyWitness, MatchingError> {
    let n = g.n();
    if n > cap || n > 63 {
        return Err(MatchingError::TooLarge {
            n,
            cap: cap.min(63),
        });
    }
    let nbr: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    // neighbors outside S, for every vertex
    let mut outside: Vec<u32> = nbr.iter().map(|m| m.count_ones()).collect();
    let mut mask = 0u64;
    let mut isolated = outside.iter().filter(|&&c| c == 0).count() as i64;
    let mut best = (isolated, 0u64);

    for step in 1u64..(1u64 << n) {
        let w = step.trailing_zeros() as usize;
        let bit = 1u64 << w;
        if mask & bit == 0 {
            if outside[w] == 0 {
                isolated -= 1;
            }
            mask |= bit;
            let mut rest = nbr[w];
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                outside[u] -= 1;
                if outside[u] == 0 && mask >> u & 1 == 0 {
                    isolated += 1;
                }
            }
        } else {
            let mut rest = nbr[w];
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if outside[u] == 0 && mask >> u & 1 == 0 {
                    isolated -= 1;
                }
                outside[u] += 1;
            }
            mask &= !bit;
            if outside[w] == 0 {
                isolated += 1;
            }
        }
        let def = isolated - mask.count_ones() as i64;
        if def > best.0 || (def == best.0 && lex_less(mask, best.1)) {
            best = (def, mask);
        }
    }

    let (def, s_mask) = best;
    let t_mask = (0..n)
        .filter(|&v| s_mask >> v & 1 == 0 && nbr[v] & !s_mask == 0)
        .fold(0u64, |acc, v| acc | 1 << v);
    let crossing = (0..n)
        .filter(|&v| t_mask >> v & 1 == 1)
        .map(|v| nbr[v].count_ones() as usize)
        .sum();
    Ok(DeficiencyWitness {
        s: VertexSet::from_mask(s_mask),
        t: VertexSet::from_mask(t_mask),
        s_size: s_mask.count_ones() as usize,
        isolated: t_mask.count_ones() as usize,
        crossing_edges: crossing,
        deficiency: def as usize,
    })
}

/// Matching number by branching on the lowest free vertex, memoized over
/// the set of remaining vertices.
pub fn brute_force_matching_number(g: &Graph) -> Result<usize, MatchingError> {
    let n = g.n();
    if n > MATCHING_CAP {
        return Err(MatchingError::TooLarge {
            n,
            cap: MATCHING_CAP,
        });
    }
    let nbr: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let mut memo = vec![u8::MAX; 1 << n];

    fn solve(avail: u64, nbr: &[u64], memo: &mut [u8]) -> u8 {
        if avail == 0 {
            return 0;
        }
        if memo[avail as usize] != u8::MAX {
            return memo[avail as usize];
        }
        let v = avail.trailing_zeros() as usize;
        let without = avail & !(1 << v);
        let mut best = solve(without, nbr, memo);
        let mut partners = nbr[v] & without;
        while partners != 0 {
            let u = partners.trailing_zeros();
            partners &= partners - 1;
            best = best.max(1 + solve(without & !(1 << u), nbr, memo));
        }
        memo[avail as usize] = best;
        best
    }

    Ok(solve((1u64 << n) - 1, &nbr, &mut memo) as usize)
}
