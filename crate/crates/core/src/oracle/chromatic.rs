use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex cap for [`chromatic_number_ie`]; the subset table has
/// `2^n` entries.
pub const DEFAULT_IE_CAP: usize = 24;

/// Chromatic number by inclusion-exclusion over vertex subsets.
///
/// `G` is `k`-colorable iff `sum_{S ⊆ V} (-1)^{n-|S|} i(S)^k > 0`, where
/// `i(S)` counts the independent sets of `G[S]` (the empty set included).
pub fn chromatic_number_ie(g: &Graph) -> Result<usize> {
    chromatic_number_ie_with_cap(g, DEFAULT_IE_CAP)
}

pub fn chromatic_number_ie_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    let terms = IeTerms::new(g, cap)?;
    let n = g.vertex_count();
    for k in 0..=n {
        if terms.covers(k)? {
            return Ok(k);
        }
    }
    unreachable!("every graph is n-colorable")
}

/// Whether `G` is `k`-colorable, by a single inclusion-exclusion sum.
pub fn is_k_colorable_ie(g: &Graph, k: usize) -> Result<bool> {
    if k >= g.vertex_count() {
        return Ok(true);
    }
    IeTerms::new(g, DEFAULT_IE_CAP)?.covers(k)
}

/// `(i(S), signed multiplicity)` pairs, grouped by value.
struct IeTerms {
    terms: Vec<(u64, i64)>,
}

impl IeTerms {
    fn new(g: &Graph, cap: usize) -> Result<Self> {
        let n = g.vertex_count();
        if n > cap || n > 32 {
            return Err(Error::limit(format!(
                "inclusion-exclusion over {n} vertices exceeds the cap of {}",
                cap.min(32)
            )));
        }
        let closed: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &u| m | 1 << u))
            .collect();
        // i(S) = i(S - v) + i(S - N[v]) for the lowest v in S
        let size = 1usize << n;
        let mut count = vec![0u32; size];
        count[0] = 1;
        for s in 1..size {
            let v = s.trailing_zeros() as usize;
            let without = s & !(1 << v);
            let outside = s & !(closed[v] as usize);
            count[s] = count[without] + count[outside];
        }
        let mut grouped: BTreeMap<u64, i64> = BTreeMap::new();
        for (s, &c) in count.iter().enumerate() {
            let sign = if (n - s.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
            *grouped.entry(u64::from(c)).or_default() += sign;
        }
        let terms = grouped.into_iter().filter(|&(_, m)| m != 0).collect();
        Ok(IeTerms { terms })
    }

    /// True iff the number of `k`-tuples of independent sets covering `V`
    /// is positive.
    fn covers(&self, k: usize) -> Result<bool> {
        match self.sum_i128(k) {
            Some(total) => Ok(total > 0),
            None => {
                let k = u32::try_from(k).map_err(|_| Error::limit("exponent too large"))?;
                let total: BigInt = self
                    .terms
                    .iter()
                    .map(|&(value, mult)| BigInt::from(value).pow(k) * mult)
                    .sum();
                Ok(total > BigInt::from(0))
            }
        }
    }

    fn sum_i128(&self, k: usize) -> Option<i128> {
        let k = u32::try_from(k).ok()?;
        self.terms.iter().try_fold(0i128, |acc, &(value, mult)| {
            let power = i128::from(value).checked_pow(k)?;
            acc.checked_add(power.checked_mul(i128::from(mult))?)
        })
    }
}
