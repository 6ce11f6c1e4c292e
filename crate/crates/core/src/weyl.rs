//! Functional (Weyl) realization: determinant variables as minors of a
//! matrix of variables, Young symmetrizers acting on upper indexes, and the
//! degree test for polynomials in determinants.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::action::{weight_of, Weight};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index::{permutation_sign, IndexSet, Letter, Symbol};
use crate::seminv::{infer_weights, Bracket, BracketSpec, Slot};
use crate::poly::{Monomial, Rational, SparsePoly, Variable};

/// Young diagram of a dominant weight; row `r` holds `m_r` cells filled
/// with `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungTableau {
    weight: Weight,
    /// `(row, column)`, 0-based, in reading order.
    cells: Vec<(usize, usize)>,
}

impl YoungTableau {
    pub fn new(weight: Weight) -> Result<Self> {
        if !weight.is_dominant() {
            return Err(Error::Input(format!("weight {weight} is not weakly decreasing")));
        }
        let cells = weight
            .components()
            .iter()
            .enumerate()
            .flat_map(|(r, &m)| (0..m as usize).map(move |c| (r, c)))
            .collect();
        Ok(YoungTableau { weight, cells })
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.weight.components().iter().enumerate().map(|(r, &m)| vec![r as u8 + 1; m as usize]).collect()
    }

    fn blocks(&self, key: impl Fn(&(usize, usize)) -> usize) -> Vec<Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, cell) in self.cells.iter().enumerate() {
            out.entry(key(cell)).or_default().push(i);
        }
        out.into_values().collect()
    }

    /// Row-preserving permutations of the cells.
    pub fn row_group(&self) -> Vec<(Vec<usize>, i8)> {
        block_group(&self.blocks(|c| c.0), self.cells.len())
    }

    /// Column-preserving permutations of the cells, with their signs.
    pub fn column_group(&self) -> Vec<(Vec<usize>, i8)> {
        block_group(&self.blocks(|c| c.1), self.cells.len())
    }
}

/// All permutations of `0..size` that map each block to itself.
fn block_group(blocks: &[Vec<usize>], size: usize) -> Vec<(Vec<usize>, i8)> {
    blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|images| {
            let mut perm: Vec<usize> = (0..size).collect();
            for (block, image) in blocks.iter().zip(&images) {
                for (&from, &to) in block.iter().zip(image) {
                    perm[from] = to;
                }
            }
            let sign = permutation_sign(&perm);
            (perm, sign)
        })
        .collect()
}

/// The `k × k` minor with rows `1..=k` and columns `X`.
pub fn expand_determinant(symbol: impl Into<Symbol>, set: &IndexSet) -> SparsePoly {
    let symbol = symbol.into();
    let cols = set.elements();
    let k = cols.len();
    SparsePoly::from_terms((0..k).permutations(k).map(|perm| {
        let m = Monomial::from_pairs(
            perm.iter().enumerate().map(|(r, &c)| (Variable::matrix(symbol, r as u8 + 1, cols[c]), 1)),
        );
        (m, Rational::from_integer(permutation_sign(&perm).into()))
    }))
}

/// Replaces every determinant variable by its minor.
pub fn det_to_matrix(p: &SparsePoly) -> SparsePoly {
    p.substitute(|v| match v {
        Variable::Det { symbol, set } => expand_determinant(*symbol, set),
        other => SparsePoly::var(other.clone()),
    })
}

fn single_symbol<'a>(vars: impl Iterator<Item = &'a Variable>) -> Result<Option<Symbol>> {
    let mut symbol = None;
    for v in vars {
        let Variable::Matrix { symbol: s, .. } = v else {
            return Err(Error::Input(format!("expected matrix elements, found {v}")));
        };
        match symbol {
            None => symbol = Some(*s),
            Some(t) if t != *s => {
                return Err(Error::Input(format!("mixed symbols {t} and {s}")));
            }
            _ => {}
        }
    }
    Ok(symbol)
}

/// Applies the Young symmetrizer of `weight` to the upper indexes of `m`:
/// antisymmetrize the columns, then symmetrize the rows. Occurrences of each
/// upper index fill the cells of its row in the order of `m`.
pub fn young_overlay(m: &Monomial, weight: &Weight) -> Result<SparsePoly> {
    young_overlay_with(m, weight, Exec::default())
}

pub fn young_overlay_with(m: &Monomial, weight: &Weight, exec: Exec) -> Result<SparsePoly> {
    let tableau = YoungTableau::new(weight.clone())?;
    let Some(symbol) = single_symbol(m.iter().map(|(v, _)| v))? else {
        return if weight.components().iter().all(|&x| x == 0) {
            Ok(SparsePoly::term(m.clone(), Rational::one()))
        } else {
            Err(Error::Input("constant monomial has no upper indexes".into()))
        };
    };

    // lower index sitting in each cell
    let mut by_row: BTreeMap<u8, Vec<u8>> = BTreeMap::new();
    for (v, e) in m.iter() {
        let Variable::Matrix { row, col, .. } = v else { unreachable!() };
        by_row.entry(*row).or_default().extend(std::iter::repeat_n(*col, e as usize));
    }
    let counts: Vec<u32> = (1..=weight.rank().max(by_row.keys().last().map_or(0, |&r| r as usize)))
        .map(|r| by_row.get(&(r as u8)).map_or(0, |v| v.len() as u32))
        .collect();
    let expected: Vec<u32> =
        (0..counts.len()).map(|r| weight.components().get(r).copied().unwrap_or(0)).collect();
    if counts != expected {
        return Err(Error::Input(format!(
            "upper-index multiplicities {counts:?} do not match weight {weight}"
        )));
    }
    let lower: Vec<u8> = tableau
        .cells()
        .iter()
        .map(|&(r, c)| by_row[&(r as u8 + 1)][c])
        .collect();
    let upper: Vec<u8> = tableau.cells().iter().map(|&(r, _)| r as u8 + 1).collect();

    let rows = tableau.row_group();
    let cols = tableau.column_group();
    let partials = exec.map(&cols, |(q, sign)| {
        let mut acc = SparsePoly::zero();
        let c = Rational::from_integer((*sign).into());
        for (p, _) in &rows {
            // upper index of cell x becomes upper(q(p(x)))
            let mono = Monomial::from_pairs(
                (0..lower.len()).map(|x| (Variable::matrix(symbol, upper[q[p[x]]], lower[x]), 1)),
            );
            acc.add_term(mono, c.clone());
        }
        acc
    });
    Ok(partials.iter().fold(SparsePoly::zero(), |acc, p| &acc + p))
}

/// Linear extension of [`young_overlay`].
pub fn young_overlay_poly(p: &SparsePoly, weight: &Weight) -> Result<SparsePoly> {
    let mut out = SparsePoly::zero();
    for (m, c) in p.terms() {
        out = &out + &young_overlay(m, weight)?.scale(c);
    }
    Ok(out)
}

/// The bracket semi-invariant built literally on the tensor of slots: the
/// Young symmetrizer of each letter's weight permutes the upper indexes of
/// that letter's slots (cells filled in reading order), the lower indexes of
/// every bracket are antisymmetrized, and only then are the slots multiplied
/// out as commuting matrix elements. Factor powers repeat the factor's
/// brackets. Exponential in the number of brackets; meant as a cross-check
/// at small sizes.
pub fn bracket_overlay(spec: &BracketSpec) -> Result<SparsePoly> {
    spec.validate()?;
    let n = spec.n as usize;
    let brackets: Vec<&Bracket> = spec
        .factors
        .iter()
        .flat_map(|f| std::iter::repeat_n(&f.brackets, f.power as usize).flatten())
        .collect();
    let slots: Vec<Slot> = brackets.iter().flat_map(|b| b.0.iter().copied()).collect();
    let weights = infer_weights(spec);

    // per letter: the slot sitting in each tableau cell, and the groups
    let mut letter_parts = Vec::new();
    for letter in Letter::ALL {
        let tableau = YoungTableau::new(weights[letter.index()].clone())?;
        let mut by_row: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
        for (k, s) in slots.iter().enumerate().filter(|(_, s)| s.letter == letter) {
            by_row.entry(s.upper).or_default().push(k);
        }
        let cell_slot: Vec<usize> = tableau.cells().iter().map(|&(r, c)| by_row[&(r as u8 + 1)][c]).collect();
        let cell_upper: Vec<u8> = tableau.cells().iter().map(|&(r, _)| r as u8 + 1).collect();
        letter_parts.push((cell_slot, cell_upper, tableau.row_group(), tableau.column_group()));
    }

    // Young symmetrizer on the tensor: upper-index vectors with coefficients
    let mut symmetrized: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    symmetrized.insert(slots.iter().map(|s| s.upper).collect(), 1);
    for (cell_slot, cell_upper, rows, cols) in &letter_parts {
        let mut next: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
        for (u, c) in &symmetrized {
            for (q, sign) in cols {
                for (p, _) in rows {
                    let mut v = u.clone();
                    for x in 0..cell_slot.len() {
                        v[cell_slot[x]] = cell_upper[q[p[x]]];
                    }
                    *next.entry(v).or_default() += c * *sign as i64;
                }
            }
        }
        next.retain(|_, c| *c != 0);
        symmetrized = next;
    }

    let perms: Vec<(Vec<usize>, i64)> = (0..n)
        .permutations(n)
        .map(|p| {
            let s = permutation_sign(&p) as i64;
            (p, s)
        })
        .collect();
    let mut out = SparsePoly::zero();
    for (u, c) in &symmetrized {
        for choice in brackets.iter().map(|_| perms.iter()).multi_cartesian_product() {
            let mut sign = *c;
            let mut pairs = Vec::with_capacity(slots.len());
            for (b, (perm, s)) in choice.iter().enumerate() {
                sign *= s;
                for pos in 0..n {
                    let k = b * n + pos;
                    pairs.push((Variable::matrix(slots[k].letter, u[k], perm[pos] as u8 + 1), 1));
                }
            }
            out.add_term(Monomial::from_pairs(pairs), Rational::from_integer(sign.into()));
        }
    }
    Ok(out)
}

fn degree_profile(weight: &Weight) -> Vec<u32> {
    let m = weight.components();
    (0..m.len()).map(|k| m[k] - m.get(k + 1).copied().unwrap_or(0)).collect()
}

/// True iff every monomial has degree `m_k − m_{k+1}` in the size-`k`
/// determinant variables, for every `k`.
pub fn membership_check(p: &SparsePoly, weight: &Weight) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !weight.is_dominant() {
        return Err(Error::Input(format!("weight {weight} is not weakly decreasing")));
    }
    let n = weight.rank();
    let want = degree_profile(weight);
    for (m, _) in p.terms() {
        let mut have = vec![0u32; n];
        for (v, e) in m.iter() {
            let Variable::Det { set, .. } = v else {
                return Err(Error::Input(format!("expected determinant variables, found {v}")));
            };
            if set.rank() as usize != n {
                return Err(Error::RankMismatch { expected: n as u8, found: set.rank() });
            }
            have[set.len() - 1] += e;
        }
        if have != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rewrites a matrix-element polynomial as a polynomial in minors of rank
/// `n`, by solving for a combination of determinant monomials with the right
/// degree profile and weight. Fails with [`Error::NotCollectable`] when no
/// such combination exists.
pub fn collect_determinants(p: &SparsePoly, n: u8) -> Result<SparsePoly> {
    if p.is_zero() {
        return Ok(SparsePoly::zero());
    }
    let Some(symbol) = single_symbol(p.terms().flat_map(|(m, _)| m.iter().map(|(v, _)| v)))? else {
        return Ok(p.clone());
    };
    let mut upper = vec![0u32; n as usize];
    let (first, _) = p.terms().next().expect("nonzero");
    for (v, e) in first.iter() {
        let Variable::Matrix { row, col, .. } = v else { unreachable!() };
        if *row == 0 || *row > n || *col == 0 || *col > n {
            return Err(Error::IndexOutOfRange { index: (*row).max(*col) as u32, n });
        }
        upper[*row as usize - 1] += e;
    }
    let weight = Weight(upper);
    if !weight.is_dominant() {
        return Err(Error::NotCollectable);
    }
    let lower = weight_of(first, n);
    let profile = degree_profile(&weight);

    let per_size: Vec<Vec<Vec<IndexSet>>> = profile
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            IndexSet::all_of_size(n, k + 1).into_iter().combinations_with_replacement(d as usize).collect()
        })
        .collect();
    let candidates: Vec<Monomial> = per_size
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| {
            Monomial::from_pairs(
                choice.into_iter().flatten().map(|set| (Variable::det(symbol, set), 1)),
            )
        })
        .filter(|m| weight_of(m, n) == lower)
        .collect();
    let columns: Vec<SparsePoly> = candidates
        .iter()
        .map(|m| det_to_matrix(&SparsePoly::term(m.clone(), Rational::one())))
        .collect();
    let coeffs = solve(&columns, p).ok_or(Error::NotCollectable)?;
    Ok(SparsePoly::from_terms(candidates.into_iter().zip(coeffs)))
}

/// Some `c` with `Σ c_i columns_i = target`, free unknowns set to zero.
fn solve(columns: &[SparsePoly], target: &SparsePoly) -> Option<Vec<Rational>> {
    let mut rows: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for m in columns.iter().flat_map(|c| c.terms().map(|(m, _)| m)).chain(target.terms().map(|(m, _)| m)) {
        let next = rows.len();
        rows.entry(m).or_insert(next);
    }
    let width = columns.len();
    let mut a = vec![vec![Rational::zero(); width + 1]; rows.len()];
    for (j, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            a[rows[m]][j] = c.clone();
        }
    }
    for (m, c) in target.terms() {
        a[rows[m]][width] = c.clone();
    }

    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..width {
        let Some(p) = (r..a.len()).find(|&i| !a[i][j].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][j].recip();
        for x in &mut a[r][j..] {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][j].is_zero() {
                let f = a[i][j].clone();
                for k in j..=width {
                    let d = &a[r][k] * &f;
                    a[i][k] -= d;
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[width].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); width];
    for (i, &j) in pivots.iter().enumerate() {
        x[j] = a[i][width].clone();
    }
    Some(x)
}

/// `λ` with `p = λ q`, if one exists and `q ≠ 0`.
pub fn proportionality(p: &SparsePoly, q: &SparsePoly) -> Option<Rational> {
    let (m, c) = q.terms().next()?;
    let lambda = p.coeff(m) / c;
    (q.scale(&lambda) == *p).then_some(lambda)
}
