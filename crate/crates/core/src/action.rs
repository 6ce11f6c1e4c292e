//! The `gl(n)` action on determinant and matrix-element variables.
//!
//! `E_{i,j}` acts on lower (column) indexes: on a determinant variable it
//! replaces `j` by `i` and renormalizes, on `x_k^r` it gives `δ_{jk} x_i^r`,
//! and it extends to products by the Leibniz rule. Z-variables are inert.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poly::{Monomial, Rational, SparsePoly, Variable};

/// Cartan eigenvalues `[m_1, ..., m_n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(n: u8) -> Self {
        Weight(vec![0; n as usize])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn uniform(n: u8, value: u32) -> Self {
        Weight(vec![value; n as usize])
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn act_on_variable(i: u8, j: u8, v: &Variable) -> Option<(Variable, i8)> {
    match v {
        Variable::Det { symbol, set } => set
            .substitute(j, i)
            .map(|(set, sign)| (Variable::Det { symbol: *symbol, set }, sign)),
        Variable::Matrix { symbol, row, col } => {
            (*col == j).then_some((Variable::Matrix { symbol: *symbol, row: *row, col: i }, 1))
        }
        Variable::Z(_) => None,
    }
}

/// Applies `E_{i,j}` to `p`.
pub fn act_root(i: u8, j: u8, p: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::zero();
    for (m, c) in p.terms() {
        for (v, e) in m.iter() {
            let Some((image, sign)) = act_on_variable(i, j, v) else {
                continue;
            };
            let rest = Monomial::from_pairs(
                m.iter()
                    .map(|(w, f)| (w.clone(), if w == v { f - 1 } else { f }))
                    .chain(std::iter::once((image, 1))),
            );
            out.add_term(rest, c * Rational::from_integer((e as i64 * sign as i64).into()));
        }
    }
    out
}

/// Component `i` counts the occurrences of lower index `i`.
pub fn weight_of(m: &Monomial, n: u8) -> Weight {
    let mut w = vec![0u32; n as usize];
    for (v, e) in m.iter() {
        match v {
            Variable::Det { set, .. } => {
                for &k in set.elements() {
                    w[k as usize - 1] += e;
                }
            }
            Variable::Matrix { col, .. } => w[*col as usize - 1] += e,
            Variable::Z(_) => {}
        }
    }
    Weight(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiInvariance {
    pub is_semi_invariant: bool,
    pub weight: Option<Weight>,
}

pub(crate) fn check_variables(p: &SparsePoly, n: u8) -> Result<()> {
    for v in p.variables() {
        match &v {
            Variable::Det { set, .. } if set.rank() != n => {
                return Err(Error::RankMismatch { expected: n, found: set.rank() })
            }
            Variable::Matrix { row, col, .. } => {
                for idx in [*row, *col] {
                    if idx == 0 || idx > n {
                        return Err(Error::IndexOutOfRange { index: idx as u32, n });
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

/// Checks that every `E_{i,j}`, `i ≠ j`, kills `p` and that all monomials of
/// `p` share one Cartan weight.
pub fn check_semi_invariant(p: &SparsePoly, n: u8, exec: Exec) -> Result<SemiInvariance> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_variables(p, n)?;
    let mut weights = p.terms().map(|(m, _)| weight_of(m, n));
    let first = weights.next().expect("nonzero polynomial");
    let homogeneous = weights.all(|w| w == first);

    let roots: Vec<(u8, u8)> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let killed = exec.all(&roots, |&(i, j)| act_root(i, j, p).is_zero());

    let ok = homogeneous && killed;
    Ok(SemiInvariance { is_semi_invariant: ok, weight: ok.then_some(first) })
}

/// `⟨f, g⟩` is zero unless both polynomials share a Cartan weight; this is
/// the weight of `p` when it is homogeneous.
pub fn homogeneous_weight(p: &SparsePoly, n: u8) -> Option<Weight> {
    let mut it = p.terms().map(|(m, _)| weight_of(m, n));
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}
