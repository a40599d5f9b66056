use std::collections::BTreeSet;

use super::cnf::literal_value;
use super::{build_clause_path, Builder, CnfFormula, Encoding, ReductionOutput, Role};
use crate::error::{Error, Result};
use crate::graph::ClassTag;
use crate::oracle::{Color, ColorSet, MAX_PALETTE};

/// Largest number of bad colorings examined per clause.
const MAX_COLORINGS_PER_CLAUSE: u64 = 1 << 20;

/// Variables per group: the largest `b` with `2^b ≤ q^p`.
pub fn ssat_group_size(q: u32, p: usize) -> Result<usize> {
    let mut power: u128 = 1;
    for _ in 0..p {
        power = power
            .checked_mul(u128::from(q))
            .filter(|&x| x < 1 << 63)
            .ok_or_else(|| Error::limit(format!("q^p = {q}^{p} is too large")))?;
    }
    let b = 127 - power.leading_zeros() as usize;
    if b == 0 {
        return Err(Error::invalid(format!("q^p = {power} cannot encode a single variable")));
    }
    Ok(b)
}

/// The `p` base-`q` digits of `value`, most significant first.
pub fn injection_digits(mut value: u64, q: u32, p: usize) -> Vec<Color> {
    let mut digits = vec![0; p];
    for d in digits.iter_mut().rev() {
        *d = (value % u64::from(q)) as Color;
        value /= u64::from(q);
    }
    digits
}

/// s-SAT to `q`-list-coloring on linear forests plus a modulator of size
/// `p · ⌈n / b⌉`, `b` from [`ssat_group_size`].
///
/// Each group of `b` variables is encoded on `p` full-list vertices. For
/// every clause and every coloring of its groups that is not a valid
/// encoding or falsifies the clause, a clause path for that coloring is
/// added, its distinguished vertex `p(i-1) + ℓ` joined to vertex `ℓ` of the
/// group of the `i`-th literal. Colorings run over the clause's distinct
/// groups in increasing order, lexicographically.
pub fn reduce_ssat(formula: &CnfFormula, q: u32, p: usize) -> Result<ReductionOutput> {
    if !(3..=MAX_PALETTE).contains(&q) {
        return Err(Error::invalid(format!("q = {q} outside 3..={MAX_PALETTE}")));
    }
    if p == 0 {
        return Err(Error::invalid("p must be at least 1"));
    }
    let b = ssat_group_size(q, p)?;
    let n = formula.num_vars();
    let groups = n.div_ceil(b);
    let group_len = |g: usize| b.min(n - (g - 1) * b);
    let mut builder = Builder::new(q);
    let mut var = vec![vec![0usize; p]; groups];
    for group in 1..=groups {
        for slot in 1..=p {
            var[group - 1][slot - 1] = builder.add(ColorSet::full(q), Role::Variable { group, slot });
        }
    }
    let mut path_id = 0;
    for (j, clause) in formula.clauses().iter().enumerate() {
        let lit_groups: Vec<usize> = clause
            .iter()
            .map(|l| (l.unsigned_abs() as usize - 1) / b + 1)
            .collect();
        let distinct: Vec<usize> = lit_groups.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let count = u64::from(q)
            .checked_pow((p * distinct.len()) as u32)
            .filter(|&c| c <= MAX_COLORINGS_PER_CLAUSE)
            .ok_or_else(|| Error::limit(format!("clause {} has too many group colorings", j + 1)))?;
        for index in 0..count {
            let digits = injection_digits(index, q, p * distinct.len());
            let group_colors = |g: usize| -> &[Color] {
                let k = distinct.binary_search(&g).expect("group of a literal");
                &digits[k * p..(k + 1) * p]
            };
            if !is_bad(clause, &distinct, &group_colors, q, b, group_len) {
                continue;
            }
            let c_mu: Vec<Color> = lit_groups
                .iter()
                .flat_map(|&g| group_colors(g).iter().map(|&d| d + 1))
                .collect();
            let gadget = build_clause_path(&c_mu, q)?;
            path_id += 1;
            let base = builder.lists.len();
            for pos in 0..gadget.path.vertex_count() {
                let distinguished = gadget.distinguished.iter().position(|&d| d == pos).map(|i| i + 1);
                builder.add(
                    gadget.lists.list(pos),
                    Role::Path {
                        clause: j + 1,
                        path: path_id,
                        position: pos,
                        distinguished,
                    },
                );
                if pos > 0 {
                    builder.edge(base + pos - 1, base + pos);
                }
            }
            for (i, &g) in lit_groups.iter().enumerate() {
                for (l, &v) in var[g - 1].iter().enumerate() {
                    builder.edge(base + gadget.distinguished[p * i + l], v);
                }
            }
        }
    }
    let modulator: Vec<usize> = var.iter().flatten().copied().collect();
    builder.finish(
        modulator,
        ClassTag::LinearForest,
        Encoding::Injection {
            q,
            p,
            group_size: b,
            num_vars: n,
        },
    )
}

/// A coloring (0-based digits per group) is bad if some group's digits are
/// not an encoding, or the encoded assignment falsifies the clause.
fn is_bad<'a>(
    clause: &[i32],
    distinct: &[usize],
    group_colors: &impl Fn(usize) -> &'a [Color],
    q: u32,
    b: usize,
    group_len: impl Fn(usize) -> usize,
) -> bool {
    let mut values = Vec::with_capacity(distinct.len());
    for &g in distinct {
        let value = group_colors(g)
            .iter()
            .fold(0u64, |acc, &d| acc * u64::from(q) + u64::from(d));
        if value >> group_len(g) != 0 {
            return true;
        }
        values.push(value);
    }
    !clause.iter().any(|&lit| {
        let g = (lit.unsigned_abs() as usize - 1) / b + 1;
        let k = distinct.binary_search(&g).expect("group of a literal");
        literal_value(lit, values[k], (g - 1) * b + 1)
    })
}
