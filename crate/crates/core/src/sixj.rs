//! 6j-symbols as contractions of four bracket semi-invariants.
//!
//! Each letter slot of each `f_i` is bound to one of six variable families
//! `A¹…A⁶`, either as the variable itself or as the differentiation operator
//! `∂/∂A`. The 6j-symbol is the value at zero of the resulting operator
//! product, computed two ways: as a lattice sum over quadruples of
//! Z-monomials ([`sixj_value`]) and by direct family-by-family contraction
//! of the determinant polynomials ([`sixj_oracle`]).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::action::Weight;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index::{Letter, Symbol};
use crate::poly::{factorial, pairing_by_differentiation, Monomial, Rational, SparsePoly, Variable};
use crate::seminv::{expand_with, infer_weights, BracketSpec, Expansion};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Derivative,
    Variable,
}

/// `FAMILY_MAP[i][letter]`: family (1..=6) and role of each letter of `f_{i+1}`.
pub const FAMILY_MAP: [[(u8, Role); 3]; 4] = [
    [(1, Role::Derivative), (2, Role::Derivative), (4, Role::Variable)],
    [(4, Role::Derivative), (3, Role::Derivative), (5, Role::Variable)],
    [(2, Role::Variable), (3, Role::Variable), (6, Role::Derivative)],
    [(1, Role::Variable), (6, Role::Variable), (5, Role::Derivative)],
];

/// Representation names of the families `A¹…A⁶`.
pub const FAMILY_NAMES: [&str; 6] = ["V1", "V2", "V3", "U", "W", "H"];

/// `(f index, letter)` of the derivative and variable side of family `j`.
pub fn family_sides(j: u8) -> [(usize, Letter); 2] {
    let mut der = None;
    let mut var = None;
    for (i, row) in FAMILY_MAP.iter().enumerate() {
        for letter in Letter::ALL {
            let (fam, role) = row[letter.index()];
            if fam == j {
                match role {
                    Role::Derivative => der = Some((i, letter)),
                    Role::Variable => var = Some((i, letter)),
                }
            }
        }
    }
    [der.expect("family has a derivative side"), var.expect("family has a variable side")]
}

#[derive(Clone, Debug)]
pub struct SixJProblem {
    pub n: u8,
    pub expansions: [Expansion; 4],
    /// Highest weight of each family, read off its derivative side.
    pub weights: [Weight; 6],
    pub warnings: Vec<String>,
    /// Per `f_i`, per support term: the determinant monomial of each letter.
    projections: [Vec<[Monomial; 3]>; 4],
}

pub fn build_problem(n: u8, specs: [&BracketSpec; 4]) -> Result<SixJProblem> {
    build_problem_with(n, specs, Exec::default())
}

pub fn build_problem_with(n: u8, specs: [&BracketSpec; 4], exec: Exec) -> Result<SixJProblem> {
    for spec in specs {
        if spec.n != n {
            return Err(Error::RankMismatch { expected: n, found: spec.n });
        }
    }
    let mut expansions = Vec::with_capacity(4);
    for spec in specs {
        expansions.push(expand_with(spec, exec)?);
    }
    let expansions: [Expansion; 4] = expansions.try_into().expect("four expansions");
    let letter_weights: Vec<[Weight; 3]> = specs.iter().map(|s| infer_weights(s)).collect();

    let mut warnings = Vec::new();
    for (i, e) in expansions.iter().enumerate() {
        if e.is_zero() {
            warnings.push(format!("f{} expands to zero", i + 1));
        }
    }
    let weights: [Weight; 6] = std::array::from_fn(|k| {
        let j = k as u8 + 1;
        let [(di, dl), (vi, vl)] = family_sides(j);
        let wd = &letter_weights[di][dl.index()];
        let wv = &letter_weights[vi][vl.index()];
        if wd != wv {
            warnings.push(format!(
                "family A{j} ({}): f{} slot {dl} has weight {wd} but f{} slot {vl} has weight {wv}; the 6j-symbol vanishes",
                FAMILY_NAMES[k],
                di + 1,
                vi + 1
            ));
        }
        wd.clone()
    });

    let projections = std::array::from_fn(|i| project_support(i, &expansions[i]));
    Ok(SixJProblem { n, expansions, weights, warnings, projections })
}

/// Determinant monomial `∏ key_α^{x_α}` of each support term of `f_{i+1}`,
/// split by letter and rewritten in the (undualized) family variables.
fn project_support(i: usize, e: &Expansion) -> Vec<[Monomial; 3]> {
    e.poly
        .terms()
        .map(|(m, _)| {
            let mut full = Monomial::one();
            for (v, x) in m.iter() {
                let Variable::Z(z) = v else { unreachable!("Z-polynomial") };
                full = full.mul(&z.key.pow(x));
            }
            Letter::ALL.map(|l| {
                let family = Symbol::family(FAMILY_MAP[i][l.index()].0, false);
                full.restrict(|v| v.symbol().is_some_and(|s| s.letter == l)).map_variables(|v| match v {
                    Variable::Det { set, .. } => Variable::det(family, set.clone()),
                    other => other.clone(),
                })
            })
        })
        .collect()
}

impl SixJProblem {
    /// Z-monomials of the support of `f_{i+1}`, in term order.
    pub fn support(&self, i: usize) -> Vec<&Monomial> {
        self.expansions[i].poly.terms().map(|(m, _)| m).collect()
    }

    pub fn weights_consistent(&self) -> bool {
        !self.warnings.iter().any(|w| w.starts_with("family"))
    }

    fn proj(&self, i: usize, t: usize, letter: Letter) -> &Monomial {
        &self.projections[i][t][letter.index()]
    }

    /// Exponents of the family `j` variables for the quadruple `q`, read off
    /// the derivative side.
    pub fn family_monomial(&self, q: &[usize; 4], j: u8) -> &Monomial {
        let [(i, l), _] = family_sides(j);
        self.proj(i, q[i], l)
    }
}

/// Quadruples of support terms (indexes into each `f_i`'s term order) that
/// satisfy the six equal-power conditions, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelectionSet {
    pub quadruples: Vec<[usize; 4]>,
}

impl SelectionSet {
    pub fn len(&self) -> usize {
        self.quadruples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quadruples.is_empty()
    }
}

fn index_by<K: Ord>(len: usize, key: impl Fn(usize) -> K) -> BTreeMap<K, Vec<usize>> {
    let mut out: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for t in 0..len {
        out.entry(key(t)).or_default().push(t);
    }
    out
}

pub fn selection_set(p: &SixJProblem) -> SelectionSet {
    selection_set_with(p, Exec::default())
}

/// Join of the four supports: `f₁ ⋈ f₄` on `A¹`, then `f₂` on `(A⁴, A⁵)`,
/// then `f₃` on `(A², A³, A⁶)`.
pub fn selection_set_with(p: &SixJProblem, exec: Exec) -> SelectionSet {
    use Letter::{A, B, C};
    let len = |i: usize| p.projections[i].len();
    let by4 = index_by(len(3), |t| p.proj(3, t, A));
    let by2 = index_by(len(1), |t| (p.proj(1, t, A), p.proj(1, t, C)));
    let by3 = index_by(len(2), |t| (p.proj(2, t, A), p.proj(2, t, B), p.proj(2, t, C)));

    let chunks = exec.map_range(len(0), |t1| {
        let mut out = Vec::new();
        let Some(t4s) = by4.get(p.proj(0, t1, A)) else { return out };
        for &t4 in t4s {
            let Some(t2s) = by2.get(&(p.proj(0, t1, C), p.proj(3, t4, C))) else { continue };
            for &t2 in t2s {
                let key = (p.proj(0, t1, B), p.proj(1, t2, B), p.proj(3, t4, B));
                if let Some(t3s) = by3.get(&key) {
                    out.extend(t3s.iter().map(|&t3| [t1, t2, t3, t4]));
                }
            }
        }
        out
    });
    let mut quadruples: Vec<[usize; 4]> = chunks.into_iter().flatten().collect();
    quadruples.sort_unstable();
    SelectionSet { quadruples }
}

/// `∏ z_α^{x_α} / x_α!` for one support term of `f_{i+1}`.
fn z_weight(e: &Expansion, m: &Monomial) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (v, x) in m.iter() {
        let Variable::Z(z) = v else { unreachable!("Z-polynomial") };
        num *= num_traits::pow(e.registry.value(z).expect("registered").clone(), x as usize);
        den *= factorial(x);
    }
    Rational::new(num, den)
}

/// Contribution `[∏ e_{j,X}!] / x! · z^x` of one quadruple.
pub fn contribution(p: &SixJProblem, q: &[usize; 4]) -> Rational {
    let mut num = BigInt::one();
    for j in 1..=6 {
        num *= p.family_monomial(q, j).factorial();
    }
    let supports: [Vec<&Monomial>; 4] = std::array::from_fn(|i| p.support(i));
    (0..4).fold(Rational::from_integer(num), |acc, i| acc * z_weight(&p.expansions[i], supports[i][q[i]]))
}

pub fn sixj_value(p: &SixJProblem) -> Rational {
    sixj_value_with(p, &selection_set(p), Exec::default())
}

/// Lattice-sum evaluation over a precomputed selection set.
pub fn sixj_value_with(p: &SixJProblem, sel: &SelectionSet, exec: Exec) -> Rational {
    exec.map(&sel.quadruples, |q| contribution(p, q))
        .into_iter()
        .fold(Rational::zero(), |acc, c| acc + c)
}

/// Attaches the family tag of `f_{i+1}` to every plain determinant variable.
pub fn tag_families(i: usize, p: &SparsePoly) -> SparsePoly {
    p.map_variables(|v| match v {
        Variable::Det { symbol, set } if symbol.family.is_none() => {
            let (j, role) = FAMILY_MAP[i][symbol.letter.index()];
            Variable::det(Symbol::family(j, role == Role::Derivative), set.clone())
        }
        other => other.clone(),
    })
}

fn strip_dual(v: &Variable) -> Variable {
    match v {
        Variable::Det { symbol, set } => match symbol.family {
            Some(tag) => Variable::det(Symbol::family(tag.index, false), set.clone()),
            None => v.clone(),
        },
        other => other.clone(),
    }
}

fn in_families(v: &Variable, families: &[u8]) -> bool {
    v.symbol().and_then(|s| s.family).is_some_and(|t| families.contains(&t.index))
}

/// `p · q` with the listed families contracted: for each family one side
/// lives in `p` and the other in `q`; matching exponents `e` contribute `e!`,
/// anything else vanishes.
fn contract(p: &SparsePoly, q: &SparsePoly, families: &[u8]) -> SparsePoly {
    let key = |m: &Monomial| m.restrict(|v| in_families(v, families)).map_variables(strip_dual);
    let mut by_key: BTreeMap<Monomial, Vec<(Monomial, &Rational)>> = BTreeMap::new();
    for (m, c) in q.terms() {
        by_key.entry(key(m)).or_default().push((m.restrict(|v| !in_families(v, families)), c));
    }
    let mut out = SparsePoly::zero();
    for (m, c) in p.terms() {
        let k = key(m);
        let Some(matches) = by_key.get(&k) else { continue };
        let weight = Rational::from_integer(k.factorial());
        let rest = m.restrict(|v| !in_families(v, families));
        for (mq, cq) in matches {
            out.add_term(rest.mul(mq), c * *cq * &weight);
        }
    }
    out
}

/// Contracts four determinant polynomials (plain letters `a, b, c`) family
/// by family and returns the value at zero.
pub fn contract_polys(polys: [&SparsePoly; 4]) -> Rational {
    let [t1, t2, t3, t4] = std::array::from_fn(|i| tag_families(i, polys[i]));
    let r = contract(&t1, &t4, &[1]);
    let r = contract(&r, &t2, &[4, 5]);
    let r = contract(&r, &t3, &[2, 3, 6]);
    debug_assert!(r.terms().all(|(m, _)| m.is_one()));
    r.constant_term()
}

/// Independent evaluation: differentiate the determinant polynomials directly.
pub fn sixj_oracle(p: &SixJProblem) -> Rational {
    let polys: [SparsePoly; 4] = std::array::from_fn(|i| p.expansions[i].det_poly());
    contract_polys([&polys[0], &polys[1], &polys[2], &polys[3]])
}

/// The contribution of one quadruple, by explicit differentiation of its
/// four monomials taken in isolation.
pub fn contribution_by_differentiation(p: &SixJProblem, q: &[usize; 4]) -> Rational {
    let mut ops = SparsePoly::one();
    let mut vars = SparsePoly::one();
    for i in 0..4 {
        let (m, c) = p.expansions[i].poly.terms().nth(q[i]).expect("support term");
        let term = SparsePoly::term(m.clone(), c.clone());
        let det = term.substitute(|v| match v {
            Variable::Z(z) => SparsePoly::term(z.key.clone(), Rational::one()),
            other => SparsePoly::var(other.clone()),
        });
        let tagged = tag_families(i, &det);
        for (tm, tc) in tagged.terms() {
            let dual = tm.restrict(|v| v.symbol().and_then(|s| s.family).is_some_and(|t| t.dual));
            let plain = tm.restrict(|v| !v.symbol().and_then(|s| s.family).is_some_and(|t| t.dual));
            ops = &ops * &SparsePoly::term(dual.map_variables(strip_dual), tc.clone());
            vars = &vars * &SparsePoly::term(plain, Rational::one());
        }
    }
    pairing_by_differentiation(&ops, &vars)
}
