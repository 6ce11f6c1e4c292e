//! Seeded test corpus of bracket specs and 6j problems, plus a lattice
//! membership oracle.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gl6j_core::action::Weight;
use gl6j_core::index::Letter;
use gl6j_core::seminv::{expand, infer_weights, Bracket, BracketSpec, Factor, Slot};
use gl6j_core::sixj::{build_problem, SixJProblem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x6a_5eed;

pub fn single(n: u8, counts: [u8; 3]) -> Bracket {
    let mut slots = Vec::new();
    for letter in Letter::ALL {
        for u in 1..=counts[letter.index()] {
            slots.push(Slot { letter, upper: u });
        }
    }
    assert_eq!(slots.len(), n as usize);
    Bracket(slots)
}

fn compositions(n: u8) -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            out.push([a, b, n - a - b]);
        }
    }
    out
}

/// Nonvanishing specs at rank `n`: single brackets, their squares, products
/// of two single-bracket factors, and two-bracket factors obtained by
/// reshuffling the slots of such products.
pub fn pool(n: u8, rng: &mut ChaCha8Rng) -> Vec<BracketSpec> {
    let singles: Vec<Bracket> = compositions(n).into_iter().map(|c| single(n, c)).collect();
    let mut out: BTreeSet<String> = BTreeSet::new();
    let mut specs = Vec::new();
    let mut push = |spec: BracketSpec, specs: &mut Vec<BracketSpec>| {
        if spec.validate().is_ok() && out.insert(spec.to_string()) && !expand(&spec).unwrap().is_zero() {
            specs.push(spec);
        }
    };
    for b in &singles {
        push(BracketSpec { n, factors: vec![Factor { brackets: vec![b.clone()], power: 1 }] }, &mut specs);
        push(BracketSpec { n, factors: vec![Factor { brackets: vec![b.clone()], power: 2 }] }, &mut specs);
    }
    for (i, b1) in singles.iter().enumerate() {
        for b2 in &singles[i..] {
            let f = |b: &Bracket| Factor { brackets: vec![b.clone()], power: 1 };
            push(BracketSpec { n, factors: vec![f(b1), f(b2)] }, &mut specs);
            for _ in 0..2 {
                let mut slots: Vec<Slot> = b1.0.iter().chain(&b2.0).copied().collect();
                slots.shuffle(rng);
                let (x, y) = slots.split_at(n as usize);
                let factor = Factor { brackets: vec![Bracket(x.to_vec()), Bracket(y.to_vec())], power: 1 };
                push(BracketSpec { n, factors: vec![factor] }, &mut specs);
            }
        }
    }
    specs
}

pub struct Problem {
    pub n: u8,
    pub specs: [BracketSpec; 4],
}

impl Problem {
    pub fn build(&self) -> SixJProblem {
        let s = &self.specs;
        build_problem(self.n, [&s[0], &s[1], &s[2], &s[3]]).unwrap()
    }

    pub fn label(&self) -> String {
        format!("n={} f1={} f2={} f3={} f4={}", self.n, self.specs[0], self.specs[1], self.specs[2], self.specs[3])
    }
}

pub struct Corpus {
    pub pools: BTreeMap<u8, Vec<BracketSpec>>,
    pub matched: Vec<Problem>,
    pub mismatched: Vec<Problem>,
}

impl Corpus {
    pub fn problems(&self) -> impl Iterator<Item = &Problem> {
        self.matched.iter().chain(&self.mismatched)
    }

    pub fn specs(&self) -> impl Iterator<Item = &BracketSpec> {
        self.pools.values().flatten()
    }
}

type Key = [Weight; 3];

/// Draws problems whose paired slots carry equal weights by chaining
/// lookups: `f1` fixes `V1, V2, U`, `f2` must start with `U`, `f3` with
/// `(V2, V3)`, and `f4` is then fully determined as `(V1, H, W)`.
pub fn matched(n: u8, pool: &[BracketSpec], want: usize, rng: &mut ChaCha8Rng) -> Vec<Problem> {
    let keys: Vec<Key> = pool.iter().map(infer_weights).collect();
    let mut by_key: BTreeMap<&Key, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        by_key.entry(k).or_default().push(i);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..20_000 {
        if out.len() == want {
            break;
        }
        let i1 = rng.gen_range(0..pool.len());
        let [v1, v2, u] = &keys[i1];
        let c2: Vec<usize> = (0..pool.len()).filter(|&i| keys[i][0] == *u).collect();
        let Some(&i2) = c2.choose(rng) else { continue };
        let [_, v3, w] = &keys[i2];
        let c3: Vec<usize> = (0..pool.len()).filter(|&i| keys[i][0] == *v2 && keys[i][1] == *v3).collect();
        let Some(&i3) = c3.choose(rng) else { continue };
        let h = &keys[i3][2];
        let Some(c4) = by_key.get(&[v1.clone(), h.clone(), w.clone()]) else { continue };
        let &i4 = c4.choose(rng).unwrap();
        if seen.insert([i1, i2, i3, i4]) {
            out.push(Problem { n, specs: [i1, i2, i3, i4].map(|i| pool[i].clone()) });
        }
    }
    out
}

/// Matched problems with `f4` replaced by a spec of different weights.
fn mismatched(n: u8, pool: &[BracketSpec], base: &[Problem], want: usize, rng: &mut ChaCha8Rng) -> Vec<Problem> {
    let mut out = Vec::new();
    for p in base.iter().take(want) {
        let key = infer_weights(&p.specs[3]);
        let others: Vec<&BracketSpec> = pool.iter().filter(|s| infer_weights(s) != key).collect();
        let f4 = (*others.choose(rng).unwrap()).clone();
        let [a, b, c, _] = p.specs.clone();
        out.push(Problem { n, specs: [a, b, c, f4] });
    }
    out
}

pub fn corpus() -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pools = BTreeMap::new();
    let mut all_matched = Vec::new();
    let mut all_mismatched = Vec::new();
    for (n, want) in [(2u8, 20usize), (3, 20), (4, 16)] {
        let pool = pool(n, &mut rng);
        let m = matched(n, &pool, want, &mut rng);
        all_mismatched.extend(mismatched(n, &pool, &m, 4, &mut rng));
        all_matched.extend(m);
        pools.insert(n, pool);
    }
    Corpus { pools, matched: all_matched, mismatched: all_mismatched }
}

/// Row-reduced integer basis (Hermite form) of the lattice spanned by `rows`.
pub fn hermite(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for col in 0..width {
        loop {
            let nz: Vec<usize> = (0..m.len()).filter(|&i| m[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][col].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = m[i][col] / m[p][col];
                    let pivot = m[p].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
            }
        }
        if let Some(p) = (0..m.len()).find(|&i| m[i][col] != 0) {
            let mut row = m.remove(p);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push((col, row));
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
    }
    out.into_iter().map(|(_, r)| r).collect()
}

/// Whether `v` lies in the lattice with Hermite basis `h`.
pub fn in_lattice(h: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v = v.to_vec();
    for row in h {
        let col = row.iter().position(|&x| x != 0).unwrap();
        if v[col] % row[col] != 0 {
            return false;
        }
        let q = v[col] / row[col];
        for (x, y) in v.iter_mut().zip(row) {
            *x -= q * y;
        }
    }
    v.iter().all(|&x| x == 0)
}

/// `(κ + L) ∩ box`, with `box = ∏ [0, max_k]`.
pub fn lattice_points_in_box(kappa: &[u32], basis: &[Vec<i64>], maxes: &[u32]) -> BTreeSet<Vec<u32>> {
    let h = hermite(basis);
    let mut out = BTreeSet::new();
    let mut point = vec![0u32; maxes.len()];
    loop {
        let diff: Vec<i64> = point.iter().zip(kappa).map(|(&x, &k)| x as i64 - k as i64).collect();
        if in_lattice(&h, &diff) {
            out.insert(point.clone());
        }
        let mut k = 0;
        loop {
            if k == point.len() {
                return out;
            }
            if point[k] < maxes[k] {
                point[k] += 1;
                break;
            }
            point[k] = 0;
            k += 1;
        }
    }
}

pub fn box_size(maxes: &[u32]) -> u128 {
    maxes.iter().fold(1u128, |acc, &m| acc.saturating_mul(m as u128 + 1))
}

/// A random spec letter-slot swap across two brackets of one factor.
pub fn swap_across_brackets(spec: &BracketSpec, rng: &mut impl Rng) -> Option<BracketSpec> {
    let (f, factor) = spec.factors.iter().enumerate().find(|(_, f)| f.brackets.len() >= 2)?;
    let mut pairs = Vec::new();
    for (p1, s1) in factor.brackets[0].0.iter().enumerate() {
        for (p2, s2) in factor.brackets[1].0.iter().enumerate() {
            if s1.letter == s2.letter && s1 != s2 {
                pairs.push((p1, p2));
            }
        }
    }
    let &(p1, p2) = pairs.choose(rng)?;
    let mut out = spec.clone();
    let brackets = &mut out.factors[f].brackets;
    let tmp = brackets[0].0[p1];
    brackets[0].0[p1] = brackets[1].0[p2];
    brackets[1].0[p2] = tmp;
    Some(out)
}
