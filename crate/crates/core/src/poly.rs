//! Exact sparse multivariate polynomials over determinant variables, matrix
//! elements and Z-variables, together with the differential action
//! `f ↷ g = f(∂)g` and the apolar pairing `⟨f, g⟩ = (f ↷ g)|₀`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::index::{IndexSet, Symbol};

pub type Rational = BigRational;

/// A polynomial variable.
///
/// `Matrix` is the matrix element `x_col^row`: the lower (column) index is
/// the one `gl(n)` acts on, the upper (row) index is the tableau row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Det { symbol: Symbol, set: IndexSet },
    Matrix { symbol: Symbol, row: u8, col: u8 },
    Z(ZVar),
}

/// A formal variable standing for one determinant monomial of one factor of
/// a bracket semi-invariant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZVar {
    pub factor: u16,
    pub key: Monomial,
}

impl Variable {
    pub fn det(symbol: impl Into<Symbol>, set: IndexSet) -> Self {
        Variable::Det { symbol: symbol.into(), set }
    }

    /// Matrix element with lower index `col` and upper index `row`.
    pub fn matrix(symbol: impl Into<Symbol>, row: u8, col: u8) -> Self {
        Variable::Matrix { symbol: symbol.into(), row, col }
    }

    pub fn symbol(&self) -> Option<Symbol> {
        match self {
            Variable::Det { symbol, .. } | Variable::Matrix { symbol, .. } => Some(*symbol),
            Variable::Z(_) => None,
        }
    }
}

/// Product of variables with positive exponents, kept sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, u32)> + '_ {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    /// `other / self` if `self` divides `other`, together with the falling
    /// factorial `∏ e_v! / (e_v - d_v)!` produced by differentiating.
    pub fn differentiate(&self, other: &Monomial) -> Option<(Monomial, BigInt)> {
        let mut coeff = BigInt::one();
        let mut rest = Vec::with_capacity(other.0.len());
        let mut it = self.0.iter().peekable();
        for (v, e) in &other.0 {
            let d = match it.peek() {
                Some((w, d)) if w == v => {
                    let d = *d;
                    it.next();
                    d
                }
                Some((w, _)) if w < v => return None,
                _ => 0,
            };
            if d > *e {
                return None;
            }
            for k in (e - d + 1)..=*e {
                coeff *= k;
            }
            if e - d > 0 {
                rest.push((v.clone(), e - d));
            }
        }
        if it.next().is_some() {
            return None;
        }
        Some((Monomial(rest), coeff))
    }

    /// Multi-index factorial `∏ e_v!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|(_, e)| factorial(*e)).product()
    }

    /// Keeps only variables accepted by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&Variable) -> bool) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| keep(v)).cloned().collect())
    }

    pub fn map_variables(&self, mut f: impl FnMut(&Variable) -> Variable) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|(v, e)| (f(v), *e)))
    }
}

pub fn factorial(k: u32) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Exact-rational sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn one() -> Self {
        SparsePoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        SparsePoly::term(Monomial::one(), c)
    }

    pub fn var(v: Variable) -> Self {
        SparsePoly::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = SparsePoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = SparsePoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes every variable by a polynomial.
    pub fn substitute(&self, mut f: impl FnMut(&Variable) -> SparsePoly) -> SparsePoly {
        let mut cache: BTreeMap<Variable, SparsePoly> = BTreeMap::new();
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut acc = SparsePoly::constant(c.clone());
            for (v, e) in m.iter() {
                let image = cache.entry(v.clone()).or_insert_with(|| f(v));
                acc = &acc * &image.pow(e);
            }
            out = &out + &acc;
        }
        out
    }

    /// Renames variables; merged terms are collected.
    pub fn map_variables(&self, mut f: impl FnMut(&Variable) -> Variable) -> SparsePoly {
        SparsePoly::from_terms(self.terms.iter().map(|(m, c)| (m.map_variables(&mut f), c.clone())))
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> =
            self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v.clone())).collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

pub fn add(p: &SparsePoly, q: &SparsePoly) -> SparsePoly {
    p + q
}

pub fn mul(p: &SparsePoly, q: &SparsePoly) -> SparsePoly {
    p * q
}

pub fn scale(p: &SparsePoly, c: &Rational) -> SparsePoly {
    p.scale(c)
}

/// `f ↷ g`: every variable of `f` becomes `∂/∂` of that variable, and the
/// resulting constant-coefficient operator is applied to `g`.
pub fn apply_diff(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::zero();
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            if let Some((rest, k)) = mf.differentiate(mg) {
                out.add_term(rest, cf * cg * Rational::from_integer(k));
            }
        }
    }
    out
}

/// `⟨f, g⟩` through the operator route: `(f ↷ g)` evaluated at zero.
pub fn pairing_by_differentiation(f: &SparsePoly, g: &SparsePoly) -> Rational {
    apply_diff(f, g).constant_term()
}

/// `⟨f, g⟩ = Σ_m f_m g_m m!` over shared exponent multi-indices.
pub fn pairing(f: &SparsePoly, g: &SparsePoly) -> Rational {
    let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    let mut acc = Rational::zero();
    for (m, c) in small.terms() {
        if let Some(d) = large.terms.get(m) {
            acc += c * d * Rational::from_integer(m.factorial());
        }
    }
    acc
}

/// Formats an exact rational as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Det { symbol, set } => {
                write!(f, "{symbol}_{{")?;
                for (k, e) in set.elements().iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")
            }
            Variable::Matrix { symbol, row, col } => write!(f, "{symbol}_{{{col}}}^{{{row}}}"),
            Variable::Z(z) => write!(f, "{z}"),
        }
    }
}

impl fmt::Display for ZVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}[{}]", self.factor + 1, self.key)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match (v, e) {
                (_, 1) => write!(f, "{v}")?,
                (Variable::Matrix { .. }, e) => write!(f, "({v})^{e}")?,
                (_, e) => write!(f, "{v}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Letter;
    use proptest::prelude::*;

    fn a(i: u8) -> SparsePoly {
        SparsePoly::var(Variable::det(Letter::A, IndexSet::new(4, &[i]).unwrap()))
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn ring_examples() {
        let a1a2 = &a(1) * &a(2);
        assert_eq!(a1a2.len(), 1);
        assert_eq!(a1a2.to_string(), "a_{1} a_{2}");
        assert!((&a(1) + &a(1).scale(&q(-1))).is_zero());
        let lhs = &(&a(1) + &a(2)) * &(&a(1) - &a(2));
        let rhs = &(&a(1) * &a(1)) - &(&a(2) * &a(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_diff_examples() {
        let a1sq = a(1).pow(2);
        assert_eq!(apply_diff(&a(1), &a1sq), a(1).scale(&q(2)));
        let a1a2 = &a(1) * &a(2);
        assert_eq!(apply_diff(&a1a2, &a1a2), SparsePoly::one());
        // d²/dA² A³ = 6A
        assert_eq!(apply_diff(&a1sq, &a(1).pow(3)), a(1).scale(&q(6)));
        assert_eq!(apply_diff(&SparsePoly::one(), &a1sq), a1sq);
        assert!(apply_diff(&a(2), &a1sq).is_zero());
    }

    #[test]
    fn apply_diff_matches_term_factorial_formula() {
        // ∂^d x^e = e!/(e-d)! x^(e-d)
        for e in 0..7u32 {
            for d in 0..=e {
                let got = apply_diff(&a(3).pow(d), &a(3).pow(e));
                let want = a(3)
                    .pow(e - d)
                    .scale(&Rational::from_integer(factorial(e) / factorial(e - d)));
                assert_eq!(got, want, "d={d} e={e}");
            }
        }
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&a(1), &a(1)), q(1));
        assert_eq!(pairing(&a(1).pow(2), &a(1).pow(2)), q(2));
        let a1a2 = &a(1) * &a(2);
        let f = &a1a2 + &a(3);
        assert_eq!(pairing(&f, &a1a2), q(1));
        assert_eq!(pairing_by_differentiation(&f, &a1a2), q(1));
    }

    #[test]
    fn rendering_is_canonical() {
        let p = &(&a(2) - &a(1).scale(&Rational::new(1.into(), 2.into()))) + &SparsePoly::constant(q(3));
        assert_eq!(p.to_string(), "3/1 - 1/2*a_{1} + a_{2}");
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        let mono = prop::collection::vec((1u8..=3, 0u32..=3), 0..3);
        prop::collection::vec((mono, -4i64..=4), 0..5).prop_map(|terms| {
            SparsePoly::from_terms(terms.into_iter().map(|(m, c)| {
                let m = Monomial::from_pairs(m.into_iter().map(|(i, e)| {
                    (Variable::det(Letter::A, IndexSet::new(3, &[i]).unwrap()), e)
                }));
                (m, Rational::from_integer(c.into()))
            }))
        })
    }

    proptest! {
        #[test]
        fn pairing_routes_agree(f in arb_poly(), g in arb_poly()) {
            prop_assert_eq!(pairing(&f, &g), pairing_by_differentiation(&f, &g));
            prop_assert_eq!(pairing(&f, &g), pairing(&g, &f));
        }

        #[test]
        fn apply_diff_bilinear(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(apply_diff(&(&f + &g), &h), &apply_diff(&f, &h) + &apply_diff(&g, &h));
            prop_assert_eq!(apply_diff(&f, &(&g + &h)), &apply_diff(&f, &g) + &apply_diff(&f, &h));
        }

        #[test]
        fn ring_laws(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        }
    }
}
