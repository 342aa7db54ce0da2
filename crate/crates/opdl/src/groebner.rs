//! Buchberger's algorithm with reduced-basis postprocessing, a
//! zero-dimensionality test, and rational zero-set extraction by triangular
//! back-substitution.

use crate::polyring::{mono_cmp, Monomial, Polynomial, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use thiserror::Error;

/// Generating set for an ideal; generators are stored monic, deduplicated,
/// with zeros dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Self {
        let mut set = BTreeSet::new();
        for g in gens {
            assert_eq!(g.nvars(), nvars, "generator from a different ring");
            if !g.is_zero() {
                set.insert(g.monic());
            }
        }
        Ideal {
            nvars,
            gens: set.into_iter().collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }
}

/// A reduced Groebner basis: monic elements, no term of any element divisible
/// by the leading monomial of another, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when 1 is in the ideal.
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && !g.is_zero())
    }
}

/// Remainder of multivariate division of `f` by `basis`: no term of the
/// result is divisible by any leading monomial of `basis`. Reduction always
/// uses the first divisor in list order, so the result is deterministic.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let leads: Vec<(&Monomial, &Rational)> =
        basis.iter().map(|g| g.leading().expect("zero divisor in basis")).collect();
    let mut p = f.clone();
    let mut r = Polynomial::zero(f.nvars());
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut reduced = false;
        for (k, (lm, lc)) in leads.iter().enumerate() {
            if lm.divides(&m) {
                let q = lm.div_into(&m).unwrap();
                let factor = &c / *lc;
                p = p.sub(&basis[k].mul_term(&q, &factor));
                reduced = true;
                break;
            }
        }
        if !reduced {
            // move the leading term to the remainder
            r.add_term(&m, &c);
            p.add_term(&m, &(-c));
        }
    }
    r
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let fq = fm.div_into(&l).unwrap();
    let gq = gm.div_into(&l).unwrap();
    let finv = Rational::one() / fc;
    let ginv = Rational::one() / gc;
    f.mul_term(&fq, &finv).sub(&g.mul_term(&gq, &ginv))
}

/// Buchberger's algorithm with the normal selection strategy and both
/// classical pair-elimination criteria, followed by reduction to the unique
/// reduced basis.
pub fn buchberger(ideal: &Ideal) -> GroebnerBasis {
    let nvars = ideal.nvars();
    let mut basis: Vec<Polynomial> = interreduce(ideal.generators().to_vec());

    // pair queue ordered by deglex of the lcm (normal selection)
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.insert(pair_key(&basis, i, j));
        }
    }
    let mut dropped: BTreeSet<(usize, usize)> = BTreeSet::new();

    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (lcm, i, j) = entry;
        dropped.insert((i, j));

        let (lmi, _) = basis[i].leading().unwrap();
        let (lmj, _) = basis[j].leading().unwrap();
        // first Buchberger criterion: coprime leading monomials
        if lmi.coprime(lmj) {
            continue;
        }
        // chain criterion: some k with LM(k) | lcm(i,j) and both mixed pairs
        // already handled
        let mut chained = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let (lmk, _) = g.leading().unwrap();
            if lmk.divides(&lcm)
                && dropped.contains(&ordered(i, k))
                && dropped.contains(&ordered(j, k))
            {
                chained = true;
                break;
            }
        }
        if chained {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let r = r.monic();
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                pairs.insert(pair_key(&basis, k, new));
            }
        }
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lmi = basis[i].leading().unwrap().0.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lmj = basis[j].leading().unwrap().0;
            if lmj.divides(&lmi) && (lmj != &lmi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> =
        basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();

    // fully reduce each element against the others
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(&minimal[i], &others);
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }
    reduced.sort_by(|f, g| {
        mono_cmp(f.leading().unwrap().0, g.leading().unwrap().0).then_with(|| f.cmp(g))
    });
    GroebnerBasis { nvars, elements: reduced }
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

fn pair_key(basis: &[Polynomial], i: usize, j: usize) -> (Monomial, usize, usize) {
    let (lmi, _) = basis[i].leading().unwrap();
    let (lmj, _) = basis[j].leading().unwrap();
    let (i, j) = ordered(i, j);
    (lmi.lcm(lmj), i, j)
}

/// Reduce every generator against the others until stable; drops redundant
/// generators early, which matters when the input is a few hundred matrix
/// entries.
fn interreduce(mut gens: Vec<Polynomial>) -> Vec<Polynomial> {
    loop {
        gens.sort();
        gens.dedup();
        let mut changed = false;
        let mut next: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for i in 0..gens.len() {
            let others: Vec<Polynomial> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = normal_form(&gens[i], &others);
            if r != gens[i] {
                changed = true;
            }
            if !r.is_zero() {
                next.push(r.monic());
            } else {
                changed = true;
            }
        }
        gens = next;
        if !changed {
            return gens;
        }
    }
}

/// A Groebner basis defines a zero-dimensional ideal exactly when every
/// variable has some pure power among the leading monomials. A unit ideal
/// (empty variety) counts as zero-dimensional.
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    if gb.is_unit_ideal() {
        return true;
    }
    if gb.is_empty() {
        return gb.nvars() == 0;
    }
    let mut covered = vec![false; gb.nvars()];
    for g in gb.elements() {
        let (lm, _) = g.leading().unwrap();
        if let Some(v) = lm.pure_power() {
            covered[v] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// All rational points of a zero-dimensional variety, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSet {
    pub points: Vec<Vec<Rational>>,
}

#[derive(Debug, Error)]
pub enum ZeroSetError {
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("eliminant does not split over Q: {0}")]
    IrrationalBranch(String),
    #[error("no univariate eliminant available under the current partial assignment")]
    NoEliminant,
}

/// Triangular back-substitution: repeatedly pick a generator that has become
/// univariate in a single unassigned variable, enumerate its rational roots,
/// branch, and recurse. Complete whenever every branch's eliminants split
/// into rational linear factors.
pub fn zero_set(gb: &GroebnerBasis, var_names: &[String]) -> Result<ZeroSet, ZeroSetError> {
    if !is_zero_dimensional(gb) {
        return Err(ZeroSetError::NotZeroDimensional);
    }
    if gb.is_unit_ideal() {
        return Ok(ZeroSet { points: Vec::new() });
    }
    let mut points = Vec::new();
    let assign: Vec<Option<Rational>> = vec![None; gb.nvars()];
    solve(gb.elements(), assign, var_names, &mut points)?;
    points.sort();
    points.dedup();
    Ok(ZeroSet { points })
}

fn solve(
    gens: &[Polynomial],
    assign: Vec<Option<Rational>>,
    var_names: &[String],
    points: &mut Vec<Vec<Rational>>,
) -> Result<(), ZeroSetError> {
    // substitute the current partial assignment
    let mut active: Vec<Polynomial> = Vec::new();
    for g in gens {
        let s = g.substitute(&assign);
        if let Some(c) = s.constant_value() {
            if !c.is_zero() {
                return Ok(()); // inconsistent branch
            }
        } else {
            active.push(s);
        }
    }
    if assign.iter().all(|a| a.is_some()) {
        points.push(assign.into_iter().map(Option::unwrap).collect());
        return Ok(());
    }
    if active.is_empty() {
        // all generators vanished but variables remain unassigned: the
        // variety is not finite along this branch
        return Err(ZeroSetError::NotZeroDimensional);
    }

    // pick the lowest-degree univariate eliminant, deterministically
    let mut best: Option<(usize, Vec<Rational>, &Polynomial)> = None;
    for g in &active {
        let vars = g.support_vars();
        if vars.len() == 1 {
            let v = vars[0];
            let coeffs = g.univariate_coeffs(v).unwrap();
            match &best {
                Some((_, bc, _)) if bc.len() <= coeffs.len() => {}
                _ => best = Some((v, coeffs, g)),
            }
        }
    }
    let Some((v, coeffs, eliminant)) = best else {
        return Err(ZeroSetError::NoEliminant);
    };
    let roots = rational_roots(&coeffs)
        .ok_or_else(|| ZeroSetError::IrrationalBranch(eliminant.render(var_names)))?;
    for r in roots {
        let mut next = assign.clone();
        next[v] = Some(r);
        solve(gens, next, var_names, points)?;
    }
    Ok(())
}

/// The distinct rational roots of a univariate polynomial given by its
/// coefficient list, or `None` if it does not split into rational linear
/// factors. Uses the rational-root theorem on the primitive integer form and
/// deflates by synthetic division.
pub fn rational_roots(coeffs: &[Rational]) -> Option<Vec<Rational>> {
    let mut cs: Vec<Rational> = coeffs.to_vec();
    while cs.last().map(|c| c.is_zero()).unwrap_or(false) {
        cs.pop();
    }
    assert!(cs.len() > 1, "constant polynomial has no roots to extract");

    let mut roots: Vec<Rational> = Vec::new();
    // strip powers of the variable: root 0
    while cs[0].is_zero() {
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
        cs.remove(0);
        if cs.len() == 1 {
            roots.sort();
            return Some(roots);
        }
    }

    // clear denominators to a primitive integer polynomial
    let mut den = BigInt::one();
    for c in &cs {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = cs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for v in &mut ints {
            *v /= &content;
        }
    }

    loop {
        if ints.len() == 1 {
            roots.sort();
            return Some(roots);
        }
        let mut found = None;
        for cand in root_candidates(&ints[0], ints.last().unwrap()) {
            if eval_int_poly(&ints, &cand).is_zero() {
                found = Some(cand);
                break;
            }
        }
        match found {
            None => return None, // irreducible factor of degree >= 2 remains
            Some(r) => {
                ints = deflate(&ints, &r);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
}

fn eval_int_poly(coeffs: &[BigInt], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + Rational::from_integer(c.clone());
    }
    acc
}

/// Synthetic division of an integer-coefficient polynomial by (x - r) for a
/// known rational root r; re-primitivised to integer coefficients.
fn deflate(coeffs: &[BigInt], r: &Rational) -> Vec<BigInt> {
    let rat_coeffs: Vec<Rational> = coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let n = rat_coeffs.len();
    let mut out = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for i in (1..n).rev() {
        let v = &rat_coeffs[i] + &carry;
        out[i - 1] = v.clone();
        carry = v * r;
    }
    let mut den = BigInt::one();
    for c in &out {
        den = den.lcm(c.denom());
    }
    out.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect()
}

fn root_candidates(a0: &BigInt, an: &BigInt) -> Vec<Rational> {
    let mut out = Vec::new();
    for p in divisors(&a0.abs()) {
        for q in divisors(&an.abs()) {
            let r = Rational::new(p.clone(), q.clone());
            for s in [r.clone(), -r] {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(!n.is_zero());
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat_int, PolyRing};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn ring_abcd() -> PolyRing {
        PolyRing::new(vec!["a", "b", "c", "d"])
    }

    /// The nonzero entries of the pruned residual block for the
    /// nonsymmetric two-associative-products case, in monic form.
    fn residual_generators(r: &PolyRing) -> Vec<Polynomial> {
        let a = r.var(0);
        let b = r.var(1);
        let c = r.var(2);
        let d = r.var(3);
        vec![
            a.mul(&d),
            b.mul(&b).add(&b),
            a.mul(&a).sub(&a.mul(&c)),
            b.mul(&d).add(&d),
            a.mul(&c).add(&a),
            b.mul(&d).sub(&d.mul(&d)),
            c.mul(&c).add(&c),
            c.mul(&d).add(&d.mul(&d)),
            c.mul(&d).add(&d),
            a.mul(&b).add(&a),
            a.mul(&a).add(&a.mul(&b)),
        ]
    }

    #[test]
    fn normal_form_self_reduction_and_membership() {
        let r = ring_abcd();
        let b = r.var(1);
        let f = b.mul(&b).add(&b);
        assert!(normal_form(&f, &[f.clone()]).is_zero());

        // one division step by hand: b^2 reduced by b^2+b leaves -b
        let nf = normal_form(&b.mul(&b), &[f.clone()]);
        assert_eq!(nf, b.neg());

        // a*d lies in the ideal <a, d, b^2+b, c^2+c>
        let a = r.var(0);
        let c = r.var(2);
        let d = r.var(3);
        let basis = vec![a.clone(), d.clone(), f, c.mul(&c).add(&c)];
        assert!(normal_form(&a.mul(&d), &basis).is_zero());
    }

    #[test]
    fn trivial_ideals() {
        let gb = buchberger(&Ideal::new(4, vec![Polynomial::zero(4)]));
        assert!(gb.is_empty());
        assert!(!is_zero_dimensional(&gb));
    }

    #[test]
    fn residual_ideal_reduces_to_printed_basis() {
        let r = ring_abcd();
        let gb = buchberger(&Ideal::new(4, residual_generators(&r)));
        let rendered: Vec<String> = gb.elements().iter().map(|g| r.render(g)).collect();
        assert_eq!(rendered, vec!["a", "d", "b^2 + b", "c^2 + c"]);
        assert!(is_zero_dimensional(&gb));

        // every input generator reduces to zero against the output basis
        for g in residual_generators(&r) {
            assert!(normal_form(&g, gb.elements()).is_zero());
        }
        // every S-polynomial of the basis reduces to zero
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let s = s_polynomial(&gb.elements()[i], &gb.elements()[j]);
                assert!(normal_form(&s, gb.elements()).is_zero());
            }
        }
    }

    #[test]
    fn reduced_basis_is_order_independent() {
        let r = ring_abcd();
        let gens = residual_generators(&r);
        let reference = buchberger(&Ideal::new(4, gens.clone()));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
            std::env::var("OPDL_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0xC0FFEE),
        );
        for _ in 0..5 {
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut rng);
            assert_eq!(buchberger(&Ideal::new(4, shuffled)), reference);
        }
    }

    #[test]
    fn zero_set_of_the_four_point_ideal() {
        let r = ring_abcd();
        let gb = buchberger(&Ideal::new(4, residual_generators(&r)));
        let zs = zero_set(&gb, r.var_names()).unwrap();
        let expect: Vec<Vec<Rational>> = [
            [0, 0, 0, 0],
            [0, 0, -1, 0],
            [0, -1, 0, 0],
            [0, -1, -1, 0],
        ]
        .iter()
        .map(|p| p.iter().map(|&v| rat_int(v)).collect())
        .collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        assert_eq!(zs.points, expect_sorted);
        // each point annihilates each generator
        for p in &zs.points {
            for g in residual_generators(&r) {
                assert!(g.evaluate(p).is_zero());
            }
        }
    }

    #[test]
    fn zero_set_of_linear_ideal_is_origin() {
        let r = PolyRing::new(vec!["x1", "x2", "x3"]);
        let gb = buchberger(&Ideal::new(3, vec![r.var(0), r.var(1), r.var(2)]));
        assert!(is_zero_dimensional(&gb));
        let zs = zero_set(&gb, r.var_names()).unwrap();
        assert_eq!(zs.points, vec![vec![rat_int(0); 3]]);
    }

    #[test]
    fn irrational_branch_is_reported() {
        let r = PolyRing::new(vec!["x"]);
        let x = r.var(0);
        let gb = buchberger(&Ideal::new(1, vec![x.mul(&x).sub(&r.constant(rat_int(2)))]));
        assert!(is_zero_dimensional(&gb));
        match zero_set(&gb, r.var_names()) {
            Err(ZeroSetError::IrrationalBranch(p)) => assert_eq!(p, "x^2 - 2"),
            other => panic!("expected irrational branch, got {other:?}"),
        }
    }

    #[test]
    fn rational_roots_basics() {
        // b(b+1): roots 0, -1
        let roots = rational_roots(&[rat_int(0), rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(roots, vec![rat_int(-1), rat_int(0)]);
        // 6x^2 - 5x + 1 = (2x-1)(3x-1)
        let roots = rational_roots(&[rat_int(1), rat_int(-5), rat_int(6)]).unwrap();
        assert_eq!(roots, vec![crate::polyring::rat(1, 3), crate::polyring::rat(1, 2)]);
        // x^2 + 1 has no rational splitting
        assert!(rational_roots(&[rat_int(1), rat_int(0), rat_int(1)]).is_none());
    }
}
