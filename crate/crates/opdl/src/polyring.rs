//! Sparse multivariate polynomial arithmetic over Q with a deglex monomial order.
//!
//! All coefficient arithmetic is exact (`BigRational`); nothing in this crate
//! touches floating point. The monomial order is degree-first, with ties
//! broken lexicographically taking the *last* declared variable as most
//! significant, so that with declaration order `a, b, c, d` the variables
//! satisfy `a < b < c < d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Rational = BigRational;

/// Exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    BigRational::from_integer(BigInt::from(num))
}

/// Dense exponent vector; length always equals the ring's variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u8>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u8>) -> Self {
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, idx: usize) -> u8 {
        self.exps[idx]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when divisible.
    pub fn div_into(&self, other: &Self) -> Option<Self> {
        if self.divides(other) {
            Some(Monomial {
                exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when the monomial is a positive power of the single variable `i`.
    pub fn pure_power(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Deglex comparison: total degree first, ties broken lexicographically with
/// the last declared variable most significant.
pub fn mono_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    assert_eq!(
        a.exps.len(),
        b.exps.len(),
        "mono_cmp: mismatched variable counts"
    );
    a.degree().cmp(&b.degree()).then_with(|| {
        for i in (0..a.exps.len()).rev() {
            match a.exps[i].cmp(&b.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    })
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(mono_cmp(self, other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        mono_cmp(self, other)
    }
}

/// Sparse polynomial: finite map monomial -> nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(Monomial::var(nvars, idx), Rational::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Leading term under deglex (largest monomial).
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: &Monomial, c: &Rational) {
        assert_eq!(m.nvars(), self.nvars, "term from a different ring");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (om, oc) in &other.terms {
                out.add_term(&m.mul(om), &(c * oc));
            }
        }
        out
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = Rational::one() / lc;
                self.scale(&inv)
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial (zero included); `None` otherwise.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Nonzero constant test; these are the admissible partial-Smith pivots.
    pub fn nonzero_scalar(&self) -> Option<Rational> {
        self.constant_value().filter(|c| !c.is_zero())
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "point length != variable count");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, p) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    term *= p;
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute values for a subset of the variables, staying in the same ring.
    pub fn substitute(&self, assign: &[Option<Rational>]) -> Polynomial {
        assert_eq!(assign.len(), self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = vec![0u8; self.nvars];
            for i in 0..self.nvars {
                match &assign[i] {
                    Some(v) => {
                        for _ in 0..m.exp(i) {
                            coeff *= v;
                        }
                    }
                    None => exps[i] = m.exp(i),
                }
            }
            out.add_term(&Monomial::from_exps(exps), &coeff);
        }
        out
    }

    /// The variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for m in self.terms.keys() {
            for i in 0..self.nvars {
                if m.exp(i) > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    /// Coefficients by degree when the polynomial is univariate in `v`.
    pub fn univariate_coeffs(&self, v: usize) -> Option<Vec<Rational>> {
        let mut deg = 0usize;
        for m in self.terms.keys() {
            for i in 0..self.nvars {
                if i != v && m.exp(i) > 0 {
                    return None;
                }
            }
            deg = deg.max(m.exp(v) as usize);
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Some(coeffs)
    }

    /// Render with explicit variable names, terms in descending deglex order,
    /// e.g. `b^2 + b` or `-a*d + 1/2`.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for i in 0..m.nvars() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(names[i].clone()),
            e => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// `p/q` with the denominator omitted when it is 1.
pub fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parse `p`, `-p`, or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// A named polynomial ring over Q: just the ordered variable table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Self {
        PolyRing {
            vars: vars.into_iter().map(Into::into).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, idx: usize) -> Polynomial {
        Polynomial::var(self.nvars(), idx)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(self.nvars(), c)
    }

    pub fn render(&self, p: &Polynomial) -> String {
        p.render(&self.vars)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring_abcd() -> PolyRing {
        PolyRing::new(vec!["a", "b", "c", "d"])
    }

    /// Brute-force comparator used as the independent order oracle: compares
    /// (degree, reversed exponent vector) as plain tuples.
    fn oracle_cmp(a: &Monomial, b: &Monomial) -> Ordering {
        let key = |m: &Monomial| {
            let mut v: Vec<u8> = (0..m.nvars()).map(|i| m.exp(i)).collect();
            v.reverse();
            (m.degree(), v)
        };
        key(a).cmp(&key(b))
    }

    fn all_monomials_up_to(nvars: usize, maxdeg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), 0u32)];
        while let Some((exps, deg)) = stack.pop() {
            if exps.len() == nvars {
                out.push(Monomial::from_exps(exps));
                continue;
            }
            for e in 0..=(maxdeg - deg) as u8 {
                let mut next = exps.clone();
                next.push(e);
                stack.push((next, deg + e as u32));
            }
        }
        out
    }

    #[test]
    fn variables_ascend_in_declaration_order() {
        // a < b < c < d as monomials.
        let n = 4;
        for i in 0..n - 1 {
            assert_eq!(
                mono_cmp(&Monomial::var(n, i), &Monomial::var(n, i + 1)),
                Ordering::Less
            );
        }
    }

    #[test]
    fn mono_cmp_matches_brute_force_oracle_and_is_a_total_order() {
        for nvars in [2usize, 4, 6] {
            let max = if nvars == 6 { 2 } else { 3 };
            let monos = all_monomials_up_to(nvars, max);
            for x in &monos {
                assert_eq!(mono_cmp(x, x), Ordering::Equal);
                for y in &monos {
                    let c = mono_cmp(x, y);
                    assert_eq!(c, oracle_cmp(x, y));
                    assert_eq!(c.reverse(), mono_cmp(y, x));
                }
            }
        }
    }

    #[test]
    fn mono_cmp_transitive_and_compatible_with_multiplication() {
        let monos = all_monomials_up_to(4, 3);
        let small: Vec<_> = monos.iter().filter(|m| m.degree() <= 2).collect();
        for x in &small {
            for y in &small {
                for z in &small {
                    if mono_cmp(x, y) == Ordering::Less && mono_cmp(y, z) == Ordering::Less {
                        assert_eq!(mono_cmp(x, z), Ordering::Less);
                    }
                }
            }
        }
        // m1 < m2 implies m*m1 < m*m2
        for x in &small {
            for y in &small {
                if mono_cmp(x, y) == Ordering::Less {
                    for m in &small {
                        assert_eq!(mono_cmp(&m.mul(x), &m.mul(y)), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn product_b_times_b_plus_one() {
        let r = ring_abcd();
        let b = r.var(1);
        let p = b.mul(&b.add(&r.one()));
        assert_eq!(r.render(&p), "b^2 + b");
        assert_eq!(p.coeff(&Monomial::from_exps(vec![0, 2, 0, 0])), rat_int(1));
        assert_eq!(p.coeff(&Monomial::from_exps(vec![0, 1, 0, 0])), rat_int(1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn addition_identities_and_cancellation() {
        let r = ring_abcd();
        let b = r.var(1);
        let f = b.mul(&b).add(&b); // b^2 + b
        assert_eq!(f.add(&r.zero()), f);
        assert_eq!(f.add(&b.neg()), b.mul(&b));
        assert_eq!(f.mul(&r.one()), f);
    }

    #[test]
    fn evaluate_zero_set_point() {
        let r = ring_abcd();
        let b = r.var(1);
        let f = b.mul(&b).add(&b);
        // (b^2+b) at b = -1 vanishes: the (0,-1,0,0) solution point.
        let point = vec![rat_int(0), rat_int(-1), rat_int(0), rat_int(0)];
        assert_eq!(f.evaluate(&point), rat_int(0));
        // at the origin only the constant term survives
        let g = f.add(&r.constant(rat(3, 7)));
        let zero = vec![rat_int(0); 4];
        assert_eq!(g.evaluate(&zero), rat(3, 7));
    }

    #[test]
    fn substitute_partial_assignment() {
        let r = ring_abcd();
        let a = r.var(0);
        let d = r.var(3);
        let f = a.mul(&d).add(&r.var(1)); // a*d + b
        let sub = f.substitute(&[Some(rat_int(2)), None, None, Some(rat(1, 2))]);
        // 2*(1/2) + b = b + 1
        assert_eq!(sub, r.var(1).add(&r.one()));
    }

    // --- randomized oracles ---------------------------------------------

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1_000_000i64..1_000_000, 1i64..200).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_monomial(nvars: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u8..4, nvars).prop_map(Monomial::from_exps)
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((arb_monomial(nvars), arb_rational()), 0..8)
            .prop_map(move |terms| Polynomial::from_terms(nvars, terms))
    }

    /// Naive term-list merge, the oracle for addition.
    fn naive_add(f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut terms: Vec<(Monomial, Rational)> = Vec::new();
        for (m, c) in f.terms().chain(g.terms()) {
            if let Some(entry) = terms.iter_mut().find(|(tm, _)| tm == m) {
                entry.1 += c;
            } else {
                terms.push((m.clone(), c.clone()));
            }
        }
        Polynomial::from_terms(f.nvars(), terms.into_iter().filter(|(_, c)| !c.is_zero()))
    }

    /// Quadratic-time schoolbook expansion, the oracle for multiplication.
    fn naive_mul(f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (fm, fc) in f.terms() {
            for (gm, gc) in g.terms() {
                out = naive_add(&out, &Polynomial::from_terms(f.nvars(), [(fm.mul(gm), fc * gc)]));
            }
        }
        out
    }

    /// Per-term evaluation, the oracle for `evaluate`.
    fn naive_eval(f: &Polynomial, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in f.terms() {
            let mut t = c.clone();
            for (i, p) in point.iter().enumerate() {
                let mut pw = Rational::one();
                for _ in 0..m.exp(i) {
                    pw *= p;
                }
                t *= pw;
            }
            total += t;
        }
        total
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn add_matches_merge_oracle(f in arb_poly(3), g in arb_poly(3)) {
            prop_assert_eq!(f.add(&g), naive_add(&f, &g));
        }

        #[test]
        fn mul_matches_schoolbook_oracle(f in arb_poly(3), g in arb_poly(3)) {
            prop_assert_eq!(f.mul(&g), naive_mul(&f, &g));
        }

        #[test]
        fn ring_axioms(f in arb_poly(3), g in arb_poly(3), h in arb_poly(3)) {
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        }

        #[test]
        fn evaluate_is_a_ring_homomorphism(
            f in arb_poly(3),
            g in arb_poly(3),
            p in proptest::collection::vec(arb_rational(), 3),
        ) {
            prop_assert_eq!(f.evaluate(&p), naive_eval(&f, &p));
            prop_assert_eq!(f.mul(&g).evaluate(&p), f.evaluate(&p) * g.evaluate(&p));
            prop_assert_eq!(f.add(&g).evaluate(&p), f.evaluate(&p) + g.evaluate(&p));
        }
    }
}
