//! Dense univariate polynomials over an abstract coefficient ring.
//!
//! One engine serves the residue field `F_{q^2}`, its extensions and the chain
//! ring `F_{q^2}[u]/(u^t)`. Coefficient rings implement [`Ring`]; the ones in
//! which every nonzero element is invertible additionally implement
//! [`Field`], which unlocks gcd and Bezout computations.

use std::fmt::Debug;

use crate::error::{Error, Result};

/// Capabilities a coefficient ring has to provide.
pub trait Ring: Clone {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The order-two ring automorphism used by the Hermitian form.
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A coefficient ring in which every nonzero element is a unit.
pub trait Field: Ring {}

/// Coefficient rings whose rendered elements can be read back.
pub trait ParseElem: Ring {
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
}

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Polynomial arithmetic over the coefficient ring `R`.
#[derive(Clone, Debug)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<R::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<R::Elem> {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); k];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    /// `x - c`.
    pub fn linear(&self, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![self.base.neg(c), self.base.one()])
    }

    /// `x^n - c`.
    pub fn xn_minus(&self, n: usize, c: &R::Elem) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); n + 1];
        coeffs[0] = self.base.neg(c);
        coeffs[n] = self.base.add(&coeffs[n], &self.base.one());
        self.from_coeffs(coeffs)
    }

    /// `x^n - 1`.
    pub fn xn_minus_one(&self, n: usize) -> Poly<R::Elem> {
        self.xn_minus(n, &self.base.one())
    }

    pub fn is_monic(&self, f: &Poly<R::Elem>) -> bool {
        f.leading().is_some_and(|c| self.base.is_one(c))
    }

    pub fn add(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = self.base.add(c, s);
        }
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn sub(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(x, y);
                coeffs[i + j] = self.base.add(&coeffs[i + j], &t);
            }
        }
        self.from_coeffs(coeffs)
    }

    pub fn product<'a, I>(&self, factors: I) -> Poly<R::Elem>
    where
        I: IntoIterator<Item = &'a Poly<R::Elem>>,
        R::Elem: 'a,
    {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, f: &Poly<R::Elem>, mut k: u64) -> Poly<R::Elem> {
        let mut acc = self.one();
        let mut base = f.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Long division; the divisor's leading coefficient must be a unit.
    pub fn divmod(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
    ) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
        let lead = b.leading().ok_or(Error::DivisionByZeroPoly)?;
        let lead_inv = self.base.inv(lead).ok_or(Error::NonUnitLeadingCoefficient)?;
        let db = b.coeffs.len() - 1;
        if a.coeffs.len() <= db {
            return Ok((self.zero(), a.clone()));
        }
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.base.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if self.base.is_zero(&rem[i]) {
                continue;
            }
            let c = self.base.mul(&rem[i], &lead_inv);
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, bj);
                rem[i - db + j] = self.base.sub(&rem[i - db + j], &t);
            }
            quot[i - db] = c;
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        Ok(self.divmod(a, b)?.1)
    }

    /// Exact quotient; fails with [`Error::NotADivisor`] on a nonzero remainder.
    pub fn div_exact(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        let (q, r) = self.divmod(a, b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotADivisor)
        }
    }

    pub fn divides(&self, b: &Poly<R::Elem>, a: &Poly<R::Elem>) -> Result<bool> {
        Ok(self.rem(a, b)?.is_zero())
    }

    pub fn mul_mod(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
        m: &Poly<R::Elem>,
    ) -> Result<Poly<R::Elem>> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, f: &Poly<R::Elem>, mut k: u64, m: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        let mut acc = self.rem(&self.one(), m)?;
        let mut base = self.rem(f, m)?;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_mod(&base, &base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    /// Coefficientwise conjugation.
    pub fn conj(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|c| self.base.conj(c)).collect())
    }

    /// `f*(x) = x^deg(f) f(0)^-1 f(1/x)`.
    pub fn reciprocal_star(&self, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        let f0 = f.coeffs.first().ok_or(Error::NonUnitConstantTerm)?;
        let f0_inv = self.base.inv(f0).ok_or(Error::NonUnitConstantTerm)?;
        let coeffs = f
            .coeffs
            .iter()
            .rev()
            .map(|c| self.base.mul(&f0_inv, c))
            .collect();
        Ok(self.from_coeffs(coeffs))
    }

    /// `f^dagger`: the conjugate of the reciprocal.
    pub fn conjugate_reciprocal_dagger(&self, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        Ok(self.conj(&self.reciprocal_star(f)?))
    }

    pub fn is_self_conjugate_reciprocal(&self, f: &Poly<R::Elem>) -> Result<bool> {
        Ok(self.conjugate_reciprocal_dagger(f)? == *f)
    }

    pub fn render(&self, f: &Poly<R::Elem>) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in f.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let coeff = if self.base.is_one(c) {
                None
            } else {
                Some(format!("({})", self.base.render(c)))
            };
            let term = match (coeff, k) {
                (None, 0) => "1".to_string(),
                (Some(c), 0) => c,
                (None, 1) => "x".to_string(),
                (Some(c), 1) => format!("{c}*x"),
                (None, k) => format!("x^{k}"),
                (Some(c), k) => format!("{c}*x^{k}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

impl<R: ParseElem> PolyRing<R> {
    /// Reads the grammar produced by [`PolyRing::render`]: terms joined by
    /// `+`, each `x^k`, `x`, `1`, `(c)`, `(c)*x` or `(c)*x^k`.
    pub fn parse(&self, s: &str) -> Result<Poly<R::Elem>> {
        let s = s.trim();
        if s == "0" {
            return Ok(self.zero());
        }
        let mut coeffs: Vec<R::Elem> = Vec::new();
        for raw in split_top_level(s)? {
            let term = raw.trim();
            let bad = || Error::Parse(format!("bad polynomial term {term:?}"));
            let (coeff, rest) = if let Some(inner) = term.strip_prefix('(') {
                let close = inner.rfind(')').ok_or_else(bad)?;
                let c = self.base.parse_elem(&inner[..close])?;
                let rest = inner[close + 1..].trim_start();
                match rest.strip_prefix('*') {
                    Some(r) => (c, Some(r.trim_start())),
                    None if rest.is_empty() => (c, None),
                    None => return Err(bad()),
                }
            } else if term == "1" {
                (self.base.one(), None)
            } else {
                (self.base.one(), Some(term))
            };
            let k = match rest {
                None => 0,
                Some("x") => 1,
                Some(r) => r
                    .strip_prefix("x^")
                    .and_then(|k| k.trim().parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, self.base.zero());
            }
            coeffs[k] = self.base.add(&coeffs[k], &coeff);
        }
        Ok(self.from_coeffs(coeffs))
    }
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    parts.push(&s[start..]);
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(Error::Parse(format!("empty term in {s:?}")));
    }
    Ok(parts)
}

impl<F: Field> PolyRing<F> {
    /// Scales a nonzero polynomial to leading coefficient one.
    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.leading() {
            None => f.clone(),
            Some(lead) => {
                let inv = self.base.inv(lead).expect("nonzero field element");
                self.scale(f, &inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("nonzero field divisor");
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
    pub fn ext_gcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divmod(&r0, &r1).expect("nonzero field divisor");
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lead) => {
                let inv = self.base.inv(lead).expect("nonzero field element");
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    /// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, s, _) = self.ext_gcd(a, m);
        if g == self.one() {
            Some(self.rem(&s, m).expect("nonzero modulus"))
        } else {
            None
        }
    }

    /// Multiplicity of the nonconstant `f` in the nonzero `g`.
    pub fn multiplicity(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> u64 {
        let mut g = g.clone();
        let mut k = 0;
        loop {
            let (q, r) = self.divmod(&g, f).expect("nonzero field divisor");
            if !r.is_zero() || g.is_zero() {
                return k;
            }
            g = q;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{FieldElement, Gf};

    fn f4() -> (Gf, FieldElement, FieldElement) {
        let gf = Gf::build(2, 1).unwrap();
        let w = gf.generator_w();
        let w2 = gf.mul(&w, &w);
        (gf, w, w2)
    }

    #[test]
    fn divmod_telescoping() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2)] {
            let gf = Gf::build(p, e).unwrap();
            let pr = PolyRing::new(gf.clone());
            let one = gf.one();
            let (q, r) = pr.divmod(&pr.xn_minus_one(3), &pr.xn_minus_one(1)).unwrap();
            assert!(r.is_zero());
            assert_eq!(q, pr.from_coeffs(vec![one, one, one]));
        }
    }

    #[test]
    fn gcd_examples() {
        let (gf, _, _) = f4();
        let pr = PolyRing::new(gf.clone());
        let one = gf.one();
        let xm1 = pr.xn_minus_one(1);
        let cyc = pr.from_coeffs(vec![one, one, one]);
        assert_eq!(pr.gcd(&xm1, &cyc), pr.one());
        let f = pr.scale(&cyc, &gf.generator_w());
        assert_eq!(pr.gcd(&f, &pr.zero()), cyc);
        assert!(pr.divmod(&cyc, &pr.zero()).is_err());
    }

    #[test]
    fn star_and_dagger_over_f4() {
        let (gf, w, w2) = f4();
        let pr = PolyRing::new(gf.clone());
        let one = gf.one();
        let xm1 = pr.xn_minus_one(1);
        assert_eq!(pr.reciprocal_star(&xm1).unwrap(), xm1);
        assert_eq!(pr.conjugate_reciprocal_dagger(&xm1).unwrap(), xm1);
        let x_plus_w = pr.from_coeffs(vec![w, one]);
        assert_eq!(pr.reciprocal_star(&x_plus_w).unwrap(), pr.from_coeffs(vec![w2, one]));
        assert_eq!(pr.conjugate_reciprocal_dagger(&x_plus_w).unwrap(), x_plus_w);
        let cyc = pr.from_coeffs(vec![one, one, one]);
        assert_eq!(pr.reciprocal_star(&cyc).unwrap(), cyc);
        assert_eq!(
            pr.reciprocal_star(&pr.x()),
            Err(Error::NonUnitConstantTerm)
        );
    }

    #[test]
    fn ext_gcd_bezout() {
        let gf = Gf::build(3, 1).unwrap();
        let pr = PolyRing::new(gf.clone());
        let a = pr.xn_minus_one(8);
        let b = pr.from_coeffs(vec![gf.one(), gf.one(), gf.zero(), gf.one()]);
        let (g, s, t) = pr.ext_gcd(&a, &b);
        assert_eq!(pr.add(&pr.mul(&s, &a), &pr.mul(&t, &b)), g);
        assert_eq!(g, pr.gcd(&a, &b));
    }

    #[test]
    fn multiplicity_counts_repeated_factors() {
        let gf = Gf::build(2, 1).unwrap();
        let pr = PolyRing::new(gf.clone());
        let xp1 = pr.xn_minus_one(1);
        assert_eq!(pr.multiplicity(&xp1, &pr.xn_minus_one(6)), 2);
        assert_eq!(pr.multiplicity(&xp1, &pr.xn_minus_one(4)), 4);
        assert_eq!(pr.multiplicity(&pr.x(), &pr.xn_minus_one(4)), 0);
    }

    #[test]
    fn render_shapes() {
        let (gf, w, _) = f4();
        let pr = PolyRing::new(gf.clone());
        let one = gf.one();
        let w1 = gf.add(&w, &one);
        let f = pr.from_coeffs(vec![w1, w, gf.zero(), one]);
        assert_eq!(pr.render(&f), "x^3 + (w)*x + (w+1)");
        assert_eq!(pr.render(&pr.xn_minus_one(1)), "x + 1");
        assert_eq!(pr.render(&pr.zero()), "0");
    }

    #[test]
    fn parse_round_trips() {
        let gf = Gf::build(3, 2).unwrap();
        let pr = PolyRing::new(gf.clone());
        for seed in 0..200u64 {
            let coeffs = (0..(seed % 7))
                .map(|i| gf.element_from_index((seed * 31 + i * 17) % gf.size()))
                .collect();
            let f = pr.from_coeffs(coeffs);
            let s = pr.render(&f);
            assert_eq!(pr.parse(&s).unwrap(), f, "{s}");
        }
        assert!(pr.parse("x^").is_err());
        assert!(pr.parse("(w+1*x").is_err());
        assert!(pr.parse("x + + 1").is_err());
    }
}
