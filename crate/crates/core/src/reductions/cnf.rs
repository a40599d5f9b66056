use crate::error::{Error, Result};

/// A CNF formula over variables `1..=num_vars`; literal `-i` negates `x_i`.
///
/// Construction normalizes clauses: repeated literals collapse, clauses
/// holding a variable and its negation are dropped (always satisfied), and
/// empty clauses are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for (j, clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::invalid(format!("clause {} is empty", j + 1)));
            }
            let mut norm: Vec<i32> = Vec::with_capacity(clause.len());
            for lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > num_vars {
                    return Err(Error::invalid(format!(
                        "clause {}: literal {lit} outside 1..={num_vars}",
                        j + 1
                    )));
                }
                if !norm.contains(&lit) {
                    norm.push(lit);
                }
            }
            if !norm.iter().any(|&l| norm.contains(&-l)) {
                out.push(norm);
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses: out,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Largest clause size.
    pub fn width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `assignment[i]` is the value of `x_{i+1}`.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

/// Whether `literal` is true under a group assignment whose variables start
/// at `first` (1-indexed) and whose bit `k` is the value of `x_{first+k}`.
pub(crate) fn literal_value(literal: i32, bits: u64, first: usize) -> bool {
    let k = literal.unsigned_abs() as usize - first;
    (bits >> k & 1 == 1) == (literal > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let f = CnfFormula::new(3, vec![vec![1, 1, -2], vec![2, -2, 3], vec![3]]).unwrap();
        assert_eq!(f.clauses(), &[vec![1, -2], vec![3]]);
        assert_eq!(f.width(), 2);
        assert!(CnfFormula::new(2, vec![vec![]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![3]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![0]]).is_err());
    }

    #[test]
    fn evaluation() {
        let f = CnfFormula::new(2, vec![vec![1, 2], vec![-1, -2]]).unwrap();
        assert!(f.evaluate(&[true, false]));
        assert!(!f.evaluate(&[true, true]));
        assert!(literal_value(-3, 0b01, 2));
        assert!(!literal_value(2, 0b10, 2));
    }
}
