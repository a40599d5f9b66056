use super::{attach_palette_clique, Builder, CnfFormula, Encoding, ReductionOutput, Role};
use crate::error::{Error, Result};
use crate::graph::ClassTag;
use crate::oracle::{Color, ColorSet, MAX_PALETTE};

/// 3-SAT to plain `3q`-coloring: [`reduce_3sat_lists`] plus a palette
/// clique.
pub fn reduce_3sat(formula: &CnfFormula, q: u32) -> Result<ReductionOutput> {
    attach_palette_clique(reduce_3sat_lists(formula, q)?)
}

/// 3-SAT to `3q`-list-coloring with a vertex cover of size `3⌈n / log q⌉`.
///
/// Three layers of variable vertices carry color blocks `[q]`, `[q+1..2q]`
/// and `[2q+1..3q]`; propagation vertices force equal truth assignments
/// across layers, and each clause gets one vertex per falsifying triple of
/// colors, the `i`-th literal read from layer `i`. A clause on fewer than
/// three variables repeats its last literal in the remaining layers.
pub fn reduce_3sat_lists(formula: &CnfFormula, q: u32) -> Result<ReductionOutput> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::invalid(format!("q = {q} is not a power of two >= 2")));
    }
    if 3 * q > MAX_PALETTE {
        return Err(Error::invalid(format!("3q = {} exceeds the palette limit", 3 * q)));
    }
    if formula.width() > 3 {
        return Err(Error::invalid(format!(
            "clause of width {} in a 3-SAT reduction",
            formula.width()
        )));
    }
    let bits = q.trailing_zeros() as usize;
    let groups = formula.num_vars().div_ceil(bits);
    let block = |layer: u32| -> ColorSet { ((layer - 1) * q + 1..=layer * q).collect() };
    let mut b = Builder::new(3 * q);

    let mut var = vec![vec![0usize; groups]; 3];
    for layer in 1..=3u32 {
        for group in 1..=groups {
            var[layer as usize - 1][group - 1] = b.add(
                block(layer),
                Role::Variable {
                    group,
                    slot: layer as usize,
                },
            );
        }
    }
    for layer in 1..=2u32 {
        for group in 1..=groups {
            let (lo, hi) = (var[layer as usize - 1][group - 1], var[layer as usize][group - 1]);
            for c in block(layer).iter() {
                for c2 in block(layer + 1).iter().filter(|&c2| c2 != c + q) {
                    let u = b.add(
                        [c, c2].into_iter().collect(),
                        Role::Propagation {
                            layer: layer as usize,
                            group,
                            colors: [c, c2],
                        },
                    );
                    b.edge(u, lo);
                    b.edge(u, hi);
                }
            }
        }
    }
    for (j, clause) in formula.clauses().iter().enumerate() {
        let mut falsifying: Vec<Vec<Color>> = Vec::with_capacity(3);
        let mut targets = Vec::with_capacity(3);
        for slot in 0..3 {
            let lit = clause[slot.min(clause.len() - 1)];
            let x = lit.unsigned_abs() as usize;
            let bit = (x - 1) % bits;
            let want = u32::from(lit > 0);
            falsifying.push(
                (1..=q)
                    .filter(|c| (c - 1) >> bit & 1 != want)
                    .map(|c| c + slot as u32 * q)
                    .collect(),
            );
            targets.push(var[slot][(x - 1) / bits]);
        }
        for &g1 in &falsifying[0] {
            for &g2 in &falsifying[1] {
                for &g3 in &falsifying[2] {
                    let w = b.add(
                        [g1, g2, g3].into_iter().collect(),
                        Role::Clause {
                            clause: j + 1,
                            colors: vec![g1, g2, g3],
                        },
                    );
                    for &t in &targets {
                        b.edge(w, t);
                    }
                }
            }
        }
    }
    let modulator: Vec<usize> = var.iter().flatten().copied().collect();
    b.finish(
        modulator,
        ClassTag::Independent,
        Encoding::Layered {
            q,
            bits,
            num_vars: formula.num_vars(),
        },
    )
}
