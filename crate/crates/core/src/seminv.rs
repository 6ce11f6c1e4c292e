//! Bracket semi-invariants of `V ⊗ W ⊗ U`.
//!
//! A [`BracketSpec`] is a product of factors `((x^{j_1} … x^{j_n}) … )^t`.
//! Each bracket antisymmetrizes `n` lower indexes; the upper indexes of each
//! letter are grouped into tableau columns ("chains") whose lower indexes
//! form one determinant variable. Expanding a factor yields a sum
//! `Σ z_α Z_α` over determinant monomials `Z_α`, and the whole spec is
//! `∏ (1/t!) (Σ z_α Z_α)^t`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::action::Weight;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index::{sort_with_sign, IndexSet, Letter, Symbol};
use crate::poly::{factorial, Monomial, Rational, SparsePoly, Variable, ZVar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub letter: Letter,
    pub upper: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bracket(pub Vec<Slot>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub brackets: Vec<Bracket>,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BracketSpec {
    pub n: u8,
    pub factors: Vec<Factor>,
}

/// A violated [`BracketSpec`] invariant. Factor and bracket numbers are
/// 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Diagnostic {
    #[error("rank {0} is below 2")]
    Rank(u8),
    #[error("expression has no factors")]
    NoFactors,
    #[error("factor {factor} has no brackets")]
    EmptyFactor { factor: usize },
    #[error("factor {factor} has power 0")]
    ZeroPower { factor: usize },
    #[error("factor {factor} bracket {bracket}: bracket size {size} != n = {n}")]
    BracketSize { factor: usize, bracket: usize, size: usize, n: u8 },
    #[error("factor {factor} bracket {bracket}: upper index {upper} outside 1..={n}")]
    UpperOutOfRange { factor: usize, bracket: usize, upper: u8, n: u8 },
    #[error(
        "factor {factor}: letter {letter} has upper-index multiplicities {} not weakly decreasing",
        fmt_mults(.multiplicities)
    )]
    NotDominant { factor: usize, letter: Letter, multiplicities: Vec<u32> },
}

fn fmt_mults(m: &[u32]) -> String {
    let last = m.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
    let parts: Vec<String> = m[..last.max(1)].iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

impl Bracket {
    /// Two slots with the same letter and upper index. The Young symmetrizer
    /// makes such slots symmetric while the bracket antisymmetrizes them, so
    /// the whole factor vanishes.
    pub fn has_repeated_slot(&self) -> bool {
        self.0.iter().enumerate().any(|(k, s)| self.0[..k].contains(s))
    }
}

impl Factor {
    pub fn slots(&self) -> impl Iterator<Item = (usize, usize, Slot)> + '_ {
        self.brackets
            .iter()
            .enumerate()
            .flat_map(|(b, br)| br.0.iter().enumerate().map(move |(p, s)| (b, p, *s)))
    }

    /// Multiplicity of each upper index per letter, padded to length `n`.
    pub fn multiplicities(&self, n: u8) -> [Vec<u32>; 3] {
        let len = (n as usize).max(self.slots().map(|(_, _, s)| s.upper as usize).max().unwrap_or(0));
        let mut m = [vec![0u32; len], vec![0u32; len], vec![0u32; len]];
        for (_, _, s) in self.slots() {
            if s.upper >= 1 {
                m[s.letter.index()][s.upper as usize - 1] += 1;
            }
        }
        m
    }
}

impl BracketSpec {
    pub fn new(n: u8, factors: Vec<Factor>) -> Result<Self> {
        let spec = BracketSpec { n, factors };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks every invariant and reports the first violation.
    pub fn validate(&self) -> Result<(), Diagnostic> {
        let n = self.n;
        if n < 2 {
            return Err(Diagnostic::Rank(n));
        }
        if self.factors.is_empty() {
            return Err(Diagnostic::NoFactors);
        }
        for (f, factor) in self.factors.iter().enumerate() {
            let factor_no = f + 1;
            if factor.brackets.is_empty() {
                return Err(Diagnostic::EmptyFactor { factor: factor_no });
            }
            if factor.power == 0 {
                return Err(Diagnostic::ZeroPower { factor: factor_no });
            }
            for (b, br) in factor.brackets.iter().enumerate() {
                if br.0.len() != n as usize {
                    return Err(Diagnostic::BracketSize {
                        factor: factor_no,
                        bracket: b + 1,
                        size: br.0.len(),
                        n,
                    });
                }
                if let Some(s) = br.0.iter().find(|s| s.upper == 0 || s.upper > n) {
                    return Err(Diagnostic::UpperOutOfRange {
                        factor: factor_no,
                        bracket: b + 1,
                        upper: s.upper,
                        n,
                    });
                }
            }
            let mults = factor.multiplicities(n);
            for letter in Letter::ALL {
                let m = &mults[letter.index()];
                if m.windows(2).any(|w| w[0] < w[1]) {
                    return Err(Diagnostic::NotDominant {
                        factor: factor_no,
                        letter,
                        multiplicities: m.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Total bracket count, counting each factor `power` times.
    pub fn bracket_count(&self) -> u32 {
        self.factors.iter().map(|f| f.brackets.len() as u32 * f.power).sum()
    }
}

/// Highest weights of the three tensor factors, read off the upper indexes.
pub fn infer_weights(spec: &BracketSpec) -> [Weight; 3] {
    let n = spec.n as usize;
    let mut w = [vec![0u32; n], vec![0u32; n], vec![0u32; n]];
    for factor in &spec.factors {
        let m = factor.multiplicities(spec.n);
        for l in 0..3 {
            for r in 0..n {
                w[l][r] += m[l][r] * factor.power;
            }
        }
    }
    w.map(Weight)
}

/// Position of a slot inside its factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SlotRef {
    pub bracket: usize,
    pub position: usize,
}

/// One tableau column of a letter: `slots[r - 1]` carries upper index `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub letter: Letter,
    pub slots: Vec<SlotRef>,
}

impl Chain {
    pub fn height(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAssignment {
    /// Chains of each factor, grouped by letter in `a, b, c` order.
    pub factors: Vec<Vec<Chain>>,
}

fn conjugate(mults: &[u32]) -> Vec<usize> {
    let cols = mults.first().copied().unwrap_or(0) as usize;
    (0..cols).map(|c| mults.iter().filter(|&&m| m as usize > c).count()).collect()
}

fn assign_factor(factor: &Factor, n: u8) -> Vec<Chain> {
    let mults = factor.multiplicities(n);
    let mut out = Vec::new();
    for letter in Letter::ALL {
        let heights = conjugate(&mults[letter.index()]);
        let mut slots: Vec<Vec<Option<SlotRef>>> = heights.iter().map(|&h| vec![None; h]).collect();
        for (b, p, s) in factor.slots() {
            if s.letter != letter {
                continue;
            }
            let r = s.upper as usize - 1;
            let c = (0..heights.len())
                .find(|&c| heights[c] > r && slots[c][r].is_none())
                .expect("valid spec leaves a chain open for every slot");
            slots[c][r] = Some(SlotRef { bracket: b, position: p });
        }
        out.extend(slots.into_iter().map(|col| Chain {
            letter,
            slots: col.into_iter().map(|s| s.expect("chain filled")).collect(),
        }));
    }
    out
}

/// Greedy column assignment: in reading order, an occurrence of letter `x`
/// with upper index `j` joins the lowest-numbered chain of `x` that still
/// awaits `j`.
pub fn chain_assign(spec: &BracketSpec) -> Result<ChainAssignment> {
    spec.validate()?;
    Ok(ChainAssignment { factors: spec.factors.iter().map(|f| assign_factor(f, spec.n)).collect() })
}

/// Z-variables of one expansion with their coefficients `z_α`, ordered by
/// (factor, determinant monomial).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZRegistry {
    entries: Vec<(ZVar, BigInt)>,
}

impl ZRegistry {
    pub fn entries(&self) -> &[(ZVar, BigInt)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, z: &ZVar) -> Option<usize> {
        self.entries.binary_search_by(|(w, _)| w.cmp(z)).ok()
    }

    pub fn value(&self, z: &ZVar) -> Option<&BigInt> {
        self.position(z).map(|i| &self.entries[i].1)
    }

    /// `Z_α ↦ z_α`.
    pub fn evaluate(&self, p: &SparsePoly) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in p.terms() {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let Variable::Z(z) = v else { panic!("non-Z variable {v}") };
                let val = self.value(z).expect("registered Z-variable");
                t *= Rational::from_integer(num_traits::pow(val.clone(), e as usize));
            }
            acc += t;
        }
        acc
    }
}

/// Result of expanding a bracket spec.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub spec: BracketSpec,
    pub chains: ChainAssignment,
    /// Per factor, `(Z_α, z_α)` of the single-factor expansion.
    pub factor_terms: Vec<Vec<(ZVar, BigInt)>>,
    pub registry: ZRegistry,
    /// The spec as a polynomial in Z-variables.
    pub poly: SparsePoly,
}

struct FactorPlan {
    n: u8,
    /// (chain, upper - 1) for each (bracket, position).
    slot_chain: Vec<Vec<(usize, usize)>>,
    chain_letters: Vec<Letter>,
    chain_heights: Vec<usize>,
}

impl FactorPlan {
    fn new(factor: &Factor, chains: &[Chain], n: u8) -> Self {
        let mut slot_chain: Vec<Vec<(usize, usize)>> =
            factor.brackets.iter().map(|b| vec![(0, 0); b.0.len()]).collect();
        for (c, chain) in chains.iter().enumerate() {
            for (r, s) in chain.slots.iter().enumerate() {
                slot_chain[s.bracket][s.position] = (c, r);
            }
        }
        FactorPlan {
            n,
            slot_chain,
            chain_letters: chains.iter().map(|c| c.letter).collect(),
            chain_heights: chains.iter().map(Chain::height).collect(),
        }
    }

    /// `∏_chains ∏_brackets (slots of the chain in the bracket)!`: the number
    /// of bracket assignments producing each term of the raw sum.
    fn redundancy(&self) -> BigInt {
        let mut g = BigInt::one();
        for row in &self.slot_chain {
            let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
            for &(c, _) in row {
                *counts.entry(c).or_default() += 1;
            }
            for k in counts.into_values() {
                g *= factorial(k);
            }
        }
        g
    }

    fn monomial(&self, lowers: &[Vec<u8>]) -> Option<(Monomial, i8)> {
        let mut sign = 1i8;
        let mut pairs = Vec::with_capacity(lowers.len());
        for (c, raw) in lowers.iter().enumerate() {
            let mut v = raw.clone();
            let s = sort_with_sign(&mut v);
            if s == 0 {
                return None;
            }
            sign *= s;
            let set = IndexSet::from_sorted_unchecked(self.n, v);
            pairs.push((Variable::det(Symbol::plain(self.chain_letters[c]), set), 1));
        }
        Some((Monomial::from_pairs(pairs), sign))
    }

    fn empty_lowers(&self) -> Vec<Vec<u8>> {
        self.chain_heights.iter().map(|&h| vec![0u8; h]).collect()
    }

    /// Sum over one permutation per bracket, brackets `from..`, given the
    /// lower indexes already placed.
    fn accumulate(
        &self,
        bracket: usize,
        lowers: &mut Vec<Vec<u8>>,
        sign: i8,
        out: &mut BTreeMap<Monomial, i64>,
    ) {
        if bracket == self.slot_chain.len() {
            if let Some((m, s)) = self.monomial(lowers) {
                *out.entry(m).or_default() += (sign * s) as i64;
            }
            return;
        }
        self.place(bracket, 0, 0u32, lowers, sign, out);
    }

    fn place(
        &self,
        bracket: usize,
        pos: usize,
        used: u32,
        lowers: &mut Vec<Vec<u8>>,
        sign: i8,
        out: &mut BTreeMap<Monomial, i64>,
    ) {
        let row = &self.slot_chain[bracket];
        if pos == row.len() {
            self.accumulate(bracket + 1, lowers, sign, out);
            return;
        }
        let (c, r) = row[pos];
        for v in 1..=self.n {
            let bit = 1u32 << v;
            if used & bit != 0 || lowers[c].contains(&v) {
                continue;
            }
            // inversions against larger values already placed in this bracket
            let larger = (used >> (v + 1)).count_ones();
            let s = if larger.is_multiple_of(2) { sign } else { -sign };
            lowers[c][r] = v;
            self.place(bracket, pos + 1, used | bit, lowers, s, out);
            lowers[c][r] = 0;
        }
    }

    /// Lower-index assignments of the first bracket, with their signs.
    fn first_bracket_assignments(&self) -> Vec<(Vec<u8>, i8)> {
        let len = self.slot_chain[0].len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        fn rec(n: u8, len: usize, cur: &mut Vec<u8>, used: u32, sign: i8, out: &mut Vec<(Vec<u8>, i8)>) {
            if cur.len() == len {
                out.push((cur.clone(), sign));
                return;
            }
            for v in 1..=n {
                let bit = 1u32 << v;
                if used & bit != 0 {
                    continue;
                }
                let larger = (used >> (v + 1)).count_ones();
                cur.push(v);
                rec(n, len, cur, used | bit, if larger.is_multiple_of(2) { sign } else { -sign }, out);
                cur.pop();
            }
        }
        rec(self.n, len, &mut cur, 0, 1, &mut out);
        out
    }

    fn expand(&self, exec: Exec) -> BTreeMap<Monomial, BigInt> {
        let starts = self.first_bracket_assignments();
        let partials = exec.map(&starts, |(vals, sign)| {
            let mut lowers = self.empty_lowers();
            let mut local = BTreeMap::new();
            for (pos, &v) in vals.iter().enumerate() {
                let (c, r) = self.slot_chain[0][pos];
                lowers[c][r] = v;
            }
            self.accumulate(1, &mut lowers, *sign, &mut local);
            local
        });
        let mut total: BTreeMap<Monomial, i64> = BTreeMap::new();
        for part in partials {
            for (m, c) in part {
                *total.entry(m).or_default() += c;
            }
        }
        let g = self.redundancy();
        total
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| {
                let (q, r) = BigInt::from(c).div_rem(&g);
                assert!(r.is_zero(), "raw coefficient {c} not divisible by orbit size {g}");
                (m, q)
            })
            .collect()
    }

    /// Monomial of the identity assignment (slot `p` of every bracket gets
    /// lower index `p + 1`), if it does not vanish.
    fn identity_monomial(&self) -> Option<Monomial> {
        let mut lowers = self.empty_lowers();
        for row in &self.slot_chain {
            for (p, &(c, r)) in row.iter().enumerate() {
                lowers[c][r] = p as u8 + 1;
            }
        }
        self.monomial(&lowers).map(|(m, _)| m)
    }
}

/// Expands `spec` into Z-variables, using the default execution strategy.
pub fn expand(spec: &BracketSpec) -> Result<Expansion> {
    expand_with(spec, Exec::default())
}

pub fn expand_with(spec: &BracketSpec, exec: Exec) -> Result<Expansion> {
    let chains = chain_assign(spec)?;
    let mut factor_terms = Vec::with_capacity(spec.factors.len());
    for (k, (factor, fchains)) in spec.factors.iter().zip(&chains.factors).enumerate() {
        let plan = FactorPlan::new(factor, fchains, spec.n);
        let raw = if factor.brackets.iter().any(Bracket::has_repeated_slot) {
            BTreeMap::new()
        } else {
            plan.expand(exec)
        };
        let mut terms: Vec<(ZVar, BigInt)> =
            raw.into_iter().map(|(m, z)| (ZVar { factor: k as u16, key: m }, z)).collect();
        // canonical overall sign: leading Z-variable has positive coefficient
        if terms.first().is_some_and(|(_, z)| z.is_negative()) {
            for (_, z) in &mut terms {
                *z = -z.clone();
            }
        }
        factor_terms.push(terms);
    }
    let registry = ZRegistry { entries: factor_terms.iter().flatten().cloned().collect() };

    let mut poly = SparsePoly::one();
    for (factor, terms) in spec.factors.iter().zip(&factor_terms) {
        let linear = SparsePoly::from_terms(
            terms
                .iter()
                .map(|(z, c)| (Monomial::var(Variable::Z(z.clone())), Rational::from_integer(c.clone()))),
        );
        let scaled = linear
            .pow(factor.power)
            .scale(&Rational::new(BigInt::one(), factorial(factor.power)));
        poly = &poly * &scaled;
    }
    Ok(Expansion { spec: spec.clone(), chains, factor_terms, registry, poly })
}

/// Integer exponent vectors in the coordinates of a [`ZRegistry`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportLattice {
    pub kappa: Vec<u32>,
    pub basis: Vec<Vec<i64>>,
}

impl Expansion {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The spec as a polynomial in determinant variables: every `Z_α` is
    /// replaced by its determinant monomial.
    pub fn det_poly(&self) -> SparsePoly {
        self.poly.substitute(|v| match v {
            Variable::Z(z) => SparsePoly::term(z.key.clone(), Rational::one()),
            other => SparsePoly::var(other.clone()),
        })
    }

    /// `Σ z_α · (determinant monomial)` of one factor.
    pub fn factor_det_poly(&self, factor: usize) -> SparsePoly {
        SparsePoly::from_terms(
            self.factor_terms[factor]
                .iter()
                .map(|(z, c)| (z.key.clone(), Rational::from_integer(c.clone()))),
        )
    }

    /// Exponent vector of a Z-monomial in registry coordinates.
    pub fn coordinates(&self, m: &Monomial) -> Vec<u32> {
        let mut x = vec![0u32; self.registry.len()];
        for (v, e) in m.iter() {
            let Variable::Z(z) = v else { panic!("non-Z variable {v}") };
            x[self.registry.position(z).expect("registered Z-variable")] = e;
        }
        x
    }

    /// `supp f` in registry coordinates, in term order.
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.poly.terms().map(|(m, _)| self.coordinates(m)).collect()
    }

    /// Shift `κ` and generators `e_α − e_β` (same factor) of the support
    /// lattice.
    pub fn support_lattice(&self) -> SupportLattice {
        let m = self.registry.len();
        let mut kappa = vec![0u32; m];
        let mut basis = Vec::new();
        for (k, factor) in self.spec.factors.iter().enumerate() {
            let coords: Vec<usize> = self.factor_terms[k]
                .iter()
                .map(|(z, _)| self.registry.position(z).expect("registered"))
                .collect();
            if coords.is_empty() {
                continue;
            }
            let plan = FactorPlan::new(factor, &self.chains.factors[k], self.spec.n);
            let base = plan
                .identity_monomial()
                .and_then(|key| self.registry.position(&ZVar { factor: k as u16, key }))
                .unwrap_or(coords[0]);
            kappa[base] += factor.power;
            for (i, &a) in coords.iter().enumerate() {
                for &b in &coords[i + 1..] {
                    let mut v = vec![0i64; m];
                    v[a] = 1;
                    v[b] = -1;
                    basis.push(v);
                }
            }
        }
        SupportLattice { kappa, basis }
    }
}

pub fn support_lattice(spec: &BracketSpec) -> Result<SupportLattice> {
    Ok(expand(spec)?.support_lattice())
}

// ---------------------------------------------------------------------------
// Text form: `invariant := factor+`, `factor := '(' bracket+ ')' ['^' INT]`,
// `bracket := '(' slot+ ')'`, `slot := LETTER INT`. A factor written with a
// single pair of parentheses, `(aabc)`, is a one-bracket factor, and a slot
// without a number takes the next free upper index of its letter in that
// bracket.

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(format!("expected '{}', found '{}'", c as char, d as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn int(&mut self) -> Result<Option<u32>> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse() {
            Ok(v) => Ok(Some(v)),
            Err(_) => {
                self.pos = start;
                self.err("integer too large")
            }
        }
    }

    fn slots(&mut self) -> Result<Bracket> {
        let mut slots = Vec::new();
        loop {
            match self.peek() {
                Some(b')') => break,
                Some(c) => {
                    let Some(letter) = Letter::from_char(c as char) else {
                        return self.err(format!("expected a slot letter a, b or c, found '{}'", c as char));
                    };
                    self.pos += 1;
                    let upper = match self.int()? {
                        Some(u) => u8::try_from(u).or_else(|_| self.err("upper index too large"))?,
                        None => {
                            1 + slots.iter().filter(|s: &&Slot| s.letter == letter).count() as u8
                        }
                    };
                    slots.push(Slot { letter, upper });
                }
                None => return self.err("unclosed bracket"),
            }
        }
        if slots.is_empty() {
            return self.err("empty bracket");
        }
        self.expect(b')')?;
        Ok(Bracket(slots))
    }

    fn factor(&mut self) -> Result<Factor> {
        self.expect(b'(')?;
        let brackets = if self.peek() == Some(b'(') {
            let mut brackets = Vec::new();
            while self.peek() == Some(b'(') {
                self.pos += 1;
                brackets.push(self.slots()?);
            }
            if self.peek().is_none() {
                return self.err("unclosed factor");
            }
            self.expect(b')')?;
            brackets
        } else {
            vec![self.slots()?]
        };
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            match self.int()? {
                Some(t) => t,
                None => return self.err("expected power after '^'"),
            }
        } else {
            1
        };
        Ok(Factor { brackets, power })
    }
}

/// Parses a bracket expression at rank `n` and validates it.
pub fn parse_expr(text: &str, n: u8) -> Result<BracketSpec> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut factors = Vec::new();
    while p.peek().is_some() {
        factors.push(p.factor()?);
    }
    if factors.is_empty() {
        return p.err("empty expression");
    }
    BracketSpec::new(n, factors)
}

impl fmt::Display for BracketSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            f.write_str("(")?;
            for br in &factor.brackets {
                f.write_str("(")?;
                for (k, s) in br.0.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}{}", s.letter, s.upper)?;
                }
                f.write_str(")")?;
            }
            f.write_str(")")?;
            if factor.power != 1 {
                write!(f, "^{}", factor.power)?;
            }
        }
        Ok(())
    }
}
