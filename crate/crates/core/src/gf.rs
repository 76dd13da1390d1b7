//! The tower `F_p ⊂ F_{q^2} ⊂ F_{(q^2)^m}`.
//!
//! [`Gf`] is a field `F_{p^k}` given by an explicit monic irreducible modulus
//! over `F_p`; the residue field of the toolkit is always built with
//! `k = 2e`, so that `q = p^e` and conjugation is `a ↦ a^q`. Elements are
//! stored as the integer `Σ c_i p^i` of their power-basis coordinates, which
//! keeps them `Copy` and lets small fields use log tables.
//!
//! [`ExtField`] is a degree-`m` extension of a [`Gf`], built as
//! `F_{q^2}[y]/(M(y))`; it hosts the primitive `n`-th roots of unity.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numtheory::{self, is_prime};
use crate::poly::{Field, ParseElem, Poly, PolyRing, Ring};

/// Default bound on the size of the residue field.
pub const DEFAULT_SIZE_LIMIT: u128 = 1u128 << 64;

const LOG_TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 1 << 10;

/// A field element: base-`p` digits are the power-basis coordinates.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct Tables {
    // exp has 2(size - 1) entries so a log sum never needs reducing
    exp: Vec<u64>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

struct GfInner {
    p: u64,
    degree: usize,
    size: u64,
    modulus: Vec<u64>,
    place: Vec<u64>,
    tables: Option<Tables>,
}

/// A finite field `F_{p^k}` with an explicit modulus.
#[derive(Clone)]
pub struct Gf {
    inner: Arc<GfInner>,
}

/// The residue field `F_{q^2}` together with its defining data.
pub type FieldSpec = Gf;

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf")
            .field("p", &self.inner.p)
            .field("degree", &self.inner.degree)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Gf {}

impl Gf {
    /// `F_{q^2}` with `q = p^e`, defined by the lexicographically least monic
    /// irreducible of degree `2e` over `F_p`.
    pub fn build(p: u64, e: u32) -> Result<Gf> {
        Self::build_with_limit(p, e, DEFAULT_SIZE_LIMIT)
    }

    pub fn build_with_limit(p: u64, e: u32, limit: u128) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::SizeLimitExceeded("extension degree e must be at least 1".into()));
        }
        let degree = 2 * e as usize;
        let size = (p as u128).checked_pow(degree as u32);
        // sizes are held in a u64, so 2^64 itself is out of reach
        match size {
            Some(s) if s <= limit && s < (1u128 << 64) => {}
            _ => {
                return Err(Error::SizeLimitExceeded(format!(
                    "{p}^{degree} exceeds the field size limit"
                )))
            }
        }
        let prime = Gf::prime(p);
        let modulus = lex_least_irreducible(&prime, degree)
            .into_coeffs()
            .into_iter()
            .map(|c| c.0)
            .collect();
        Ok(Gf::with_modulus(p, modulus))
    }

    /// `F_{q^2}` for a prime power `q`.
    pub fn for_q(q: u64) -> Result<Gf> {
        let (p, e) = numtheory::prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
        Gf::build(p, e)
    }

    /// The prime field `F_p`, modulus `x`.
    pub fn prime(p: u64) -> Gf {
        assert!(is_prime(p), "{p} is not prime");
        Gf::with_modulus(p, vec![0, 1])
    }

    fn with_modulus(p: u64, modulus: Vec<u64>) -> Gf {
        let degree = modulus.len() - 1;
        let mut place = Vec::with_capacity(degree + 1);
        let mut acc = 1u64;
        for i in 0..=degree {
            place.push(acc);
            if i < degree {
                acc = acc.wrapping_mul(p);
            }
        }
        let size = place[degree];
        let mut gf = Gf {
            inner: Arc::new(GfInner { p, degree, size, modulus, place, tables: None }),
        };
        if size <= LOG_TABLE_LIMIT {
            let tables = gf.build_tables();
            Arc::get_mut(&mut gf.inner).expect("unshared").tables = Some(tables);
        }
        gf
    }

    fn build_tables(&self) -> Tables {
        let size = self.inner.size;
        let g = self.lex_least_generator();
        let order = (size - 1) as usize;
        let mut exp = Vec::with_capacity(2 * order);
        let mut log = vec![u32::MAX; size as usize];
        let mut x = FieldElement::ONE;
        for i in 0..order {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        exp.extend_from_within(..);
        let add = (self.inner.p != 2 && size <= ADD_TABLE_LIMIT).then(|| {
            let mut add = Vec::with_capacity((size * size) as usize);
            for a in 0..size {
                for b in 0..size {
                    add.push(self.add_digits(FieldElement(a), FieldElement(b)).0 as u32);
                }
            }
            add
        });
        Tables { exp, log, add }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Degree over `F_p`.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// `e` with `q = p^e` (half the degree).
    pub fn e(&self) -> u32 {
        (self.inner.degree / 2) as u32
    }

    /// `q = p^e`, the order of the conjugation-fixed subfield.
    pub fn q(&self) -> u64 {
        self.inner.place[self.inner.degree / 2]
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.inner.size
    }

    /// Monic modulus over `F_p`, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn element(&self, coords: &[u64]) -> FieldElement {
        assert!(coords.len() <= self.inner.degree, "too many coordinates");
        let v = coords
            .iter()
            .zip(&self.inner.place)
            .map(|(&c, &w)| (c % self.inner.p) * w)
            .sum();
        FieldElement(v)
    }

    pub fn element_from_index(&self, index: u64) -> FieldElement {
        assert!(index < self.inner.size, "index out of range");
        FieldElement(index)
    }

    /// Coordinates w.r.t. the power basis, length `degree`.
    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        let mut v = a.0;
        (0..self.inner.degree)
            .map(|_| {
                let d = v % self.inner.p;
                v /= self.inner.p;
                d
            })
            .collect()
    }

    /// The class of the modulus variable, written `w`.
    pub fn generator_w(&self) -> FieldElement {
        if self.inner.degree == 1 {
            self.from_int(-(self.inner.modulus[0] as i64))
        } else {
            FieldElement(self.inner.p)
        }
    }

    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.inner.p as i64) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.size).map(FieldElement)
    }

    fn add_digits(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        for &w in &self.inner.place[..self.inner.degree] {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        FieldElement(out)
    }

    fn neg_digits(&self, a: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u64;
        for &w in &self.inner.place[..self.inner.degree] {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        FieldElement(out)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let k = self.inner.degree;
        let p = self.inner.p;
        let da = self.coords(a);
        let db = self.coords(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + numtheory::mul_mod(x, y, p)) % p;
            }
        }
        let m = &self.inner.modulus;
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let t = numtheory::mul_mod(c, m[j], p);
                prod[i - k + j] = (prod[i - k + j] + p - t) % p;
            }
        }
        self.element(&prod[..k])
    }

    pub fn add_elem(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(Tables { add: Some(add), .. }) => {
                FieldElement(add[(a.0 * self.inner.size + b.0) as usize] as u64)
            }
            _ => self.add_digits(a, b),
        }
    }

    pub fn mul_elem(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.inner.degree == 1 {
            return FieldElement(numtheory::mul_mod(a.0, b.0, self.inner.p));
        }
        match &self.inner.tables {
            Some(t) => {
                let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FieldElement(t.exp[s])
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.inner.tables {
            let order = self.inner.size - 1;
            let l = numtheory::mul_mod(t.log[a.0 as usize] as u64, k % order, order);
            return FieldElement(t.exp[l as usize]);
        }
        let (mut acc, mut base, mut k) = (FieldElement::ONE, a, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_elem(acc, base);
            }
            base = self.mul_elem(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.inner.tables {
            let order = (self.inner.size - 1) as usize;
            let l = t.log[a.0 as usize] as usize;
            return Some(FieldElement(t.exp[(order - l) % order]));
        }
        Some(self.pow(a, self.inner.size - 2))
    }

    /// `a ↦ a^q`.
    pub fn conjugate(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.q())
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.inner.p)
    }

    /// Whether `a` lies in the conjugation-fixed subfield `F_q`.
    pub fn in_base_subfield(&self, a: FieldElement) -> bool {
        self.conjugate(a) == a
    }

    /// Multiplicative order; a divisor of `size - 1`.
    pub fn element_order(&self, a: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroHasNoOrder);
        }
        let group = self.inner.size - 1;
        let mut ord = group;
        for l in numtheory::factorize(group).primes() {
            while ord % l == 0 && self.pow(a, ord / l) == FieldElement::ONE {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Smallest element (by index) generating the multiplicative group.
    pub fn lex_least_generator(&self) -> FieldElement {
        let group = self.inner.size - 1;
        let primes: Vec<u64> = numtheory::factorize(group).primes().collect();
        let pow = |a: FieldElement, k: u64| {
            let (mut acc, mut base, mut k) = (FieldElement::ONE, a, k);
            while k > 0 {
                if k & 1 == 1 {
                    acc = self.mul_slow(acc, base);
                }
                base = self.mul_slow(base, base);
                k >>= 1;
            }
            acc
        };
        (1..self.inner.size)
            .map(FieldElement)
            .find(|&a| primes.iter().all(|&l| pow(a, group / l) != FieldElement::ONE))
            .expect("multiplicative group is cyclic")
    }

    pub fn render_elem(&self, a: FieldElement) -> String {
        if a.0 == 0 {
            return "0".to_string();
        }
        let coords = self.coords(a);
        let mut terms = Vec::new();
        for (i, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (c, i) {
                (c, 0) => c.to_string(),
                (1, 1) => "w".to_string(),
                (c, 1) => format!("{c}*w"),
                (1, i) => format!("w^{i}"),
                (c, i) => format!("{c}*w^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    /// Inverse of [`Gf::render_elem`]; accepts `c`, `w`, `w^k`, `c*w`,
    /// `c*w^k` terms joined by `+`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut coords = vec![0u64; self.inner.degree];
        for raw in s.split('+') {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let bad = || Error::Parse(format!("bad field term {raw:?}"));
            let (coef, power) = match term.split_once('w') {
                None => (term.parse::<u64>().map_err(|_| bad())?, 0usize),
                Some((c, rest)) => {
                    let coef = match c.strip_suffix('*') {
                        Some(c) => c.parse::<u64>().map_err(|_| bad())?,
                        None if c.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    let power = match rest.strip_prefix('^') {
                        Some(k) => k.parse::<usize>().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (coef, power)
                }
            };
            if power >= self.inner.degree || coef >= self.inner.p {
                return Err(bad());
            }
            coords[power] = (coords[power] + coef) % self.inner.p;
        }
        Ok(self.element(&coords))
    }
}

impl Ring for Gf {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add_elem(*a, *b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add_elem(*a, self.neg_digits(*b))
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.neg_digits(*a)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.mul_elem(*a, *b)
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0 == 0
    }
    fn is_unit(&self, a: &FieldElement) -> bool {
        a.0 != 0
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.inverse(*a)
    }
    fn conj(&self, a: &FieldElement) -> FieldElement {
        self.conjugate(*a)
    }
    fn render(&self, a: &FieldElement) -> String {
        self.render_elem(*a)
    }
}

impl Field for Gf {}

impl ParseElem for Gf {
    fn parse_elem(&self, s: &str) -> Result<FieldElement> {
        Gf::parse_elem(self, s)
    }
}

impl PolyRing<Gf> {
    /// `x^(s^i) mod f` for `i = 1..=count`, `s` the field size.
    fn frobenius_orbit_of_x(&self, f: &Poly<FieldElement>, count: usize) -> Vec<Poly<FieldElement>> {
        let s = self.base().size();
        let mut out = Vec::with_capacity(count);
        let mut h = self.rem(&self.x(), f).expect("nonzero modulus");
        for _ in 0..count {
            h = self.pow_mod(&h, s, f).expect("nonzero modulus");
            out.push(h.clone());
        }
        out
    }

    /// Rabin's test: `x^(s^d) = x mod f` and `gcd(x^(s^(d/l)) - x, f) = 1`
    /// for every prime `l | d`.
    pub fn is_irreducible(&self, f: &Poly<FieldElement>) -> bool {
        let d = match f.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let orbit = self.frobenius_orbit_of_x(f, d);
        let x = self.rem(&self.x(), f).expect("nonzero modulus");
        if orbit[d - 1] != x {
            return false;
        }
        numtheory::factorize(d as u64).primes().all(|l| {
            let h = &orbit[d / l as usize - 1];
            self.gcd(&self.sub(h, &x), f) == self.one()
        })
    }

    /// Ben-Or's test, used when scanning for moduli: rejects as soon as a
    /// factor of degree `i <= d/2` shows up.
    pub fn is_irreducible_ben_or(&self, f: &Poly<FieldElement>) -> bool {
        let d = match f.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let s = self.base().size();
        let x = self.rem(&self.x(), f).expect("nonzero modulus");
        let mut h = x.clone();
        for _ in 0..d / 2 {
            h = self.pow_mod(&h, s, f).expect("nonzero modulus");
            if self.gcd(&self.sub(&h, &x), f) != self.one() {
                return false;
            }
        }
        true
    }
}

/// Lexicographically least monic irreducible of degree `d` over `field`.
///
/// Candidates are ordered by their coefficient vectors `(c_0, ..., c_{d-1})`
/// compared low degree first, each coefficient compared by index.
pub fn lex_least_irreducible(field: &Gf, d: usize) -> Poly<FieldElement> {
    assert!(d >= 1);
    let pr = PolyRing::new(field.clone());
    let size = field.size();
    if d == 1 {
        return pr.x();
    }
    // c_0 = 0 makes x a factor, so the scan starts at c_0 = 1
    let mut digits = vec![0u64; d];
    digits[0] = 1;
    loop {
        let mut coeffs: Vec<FieldElement> = digits.iter().map(|&i| FieldElement(i)).collect();
        coeffs.push(FieldElement::ONE);
        let f = pr.from_coeffs(coeffs);
        if pr.is_irreducible_ben_or(&f) {
            return f;
        }
        // the last coefficient is the least significant digit
        let mut i = d - 1;
        loop {
            digits[i] += 1;
            if digits[i] < size {
                break;
            }
            digits[i] = 0;
            assert!(i > 0, "no irreducible polynomial of degree {d}");
            i -= 1;
        }
    }
}

/// An element of an [`ExtField`]: `m` coordinates over `F_{q^2}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtElement(Vec<FieldElement>);

impl ExtElement {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }
}

/// `F_{(q^2)^m} = F_{q^2}[y]/(M(y))`.
#[derive(Clone, Debug)]
pub struct ExtField {
    base: Gf,
    m: usize,
    modulus: Poly<FieldElement>,
    embed_image: ExtElement,
}

/// The extension hosting a primitive `n`-th root of unity.
pub type ExtensionCtx = ExtField;

impl ExtField {
    /// Extension of degree `m` by the lexicographically least monic
    /// irreducible of that degree.
    pub fn new(base: &Gf, m: usize) -> ExtField {
        let modulus = lex_least_irreducible(base, m);
        let mut ext = ExtField {
            base: base.clone(),
            m,
            modulus,
            embed_image: ExtElement(Vec::new()),
        };
        ext.embed_image = ext.embed(base.generator_w());
        ext
    }

    pub fn base(&self) -> &Gf {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &Poly<FieldElement> {
        &self.modulus
    }

    /// Image of the residue field's generator `w`.
    pub fn embed_image(&self) -> &ExtElement {
        &self.embed_image
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.base.size()).pow(self.m as u32)
    }

    /// The inclusion `F_{q^2} → F_{(q^2)^m}`.
    pub fn embed(&self, a: FieldElement) -> ExtElement {
        let mut v = vec![FieldElement::ZERO; self.m];
        v[0] = a;
        ExtElement(v)
    }

    /// Inverse of [`ExtField::embed`] on its image.
    pub fn descend(&self, a: &ExtElement) -> Option<FieldElement> {
        a.0[1..].iter().all(|c| c.0 == 0).then_some(a.0[0])
    }

    /// Candidate number `index`, coordinate 0 as least significant digit.
    pub fn element_from_index(&self, mut index: u64) -> ExtElement {
        let s = self.base.size();
        let v = (0..self.m)
            .map(|_| {
                let d = index % s;
                index /= s;
                FieldElement(d)
            })
            .collect();
        ExtElement(v)
    }

    fn as_poly(&self, a: &ExtElement) -> Poly<FieldElement> {
        PolyRing::new(self.base.clone()).from_coeffs(a.0.clone())
    }

    fn elem_of_poly(&self, f: Poly<FieldElement>) -> ExtElement {
        let mut v = f.into_coeffs();
        v.resize(self.m, FieldElement::ZERO);
        ExtElement(v)
    }

    pub fn pow_big(&self, a: &ExtElement, k: &BigUint) -> ExtElement {
        let mut acc = self.one();
        for i in (0..k.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if k.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow(&self, a: &ExtElement, k: u64) -> ExtElement {
        self.pow_big(a, &BigUint::from(k))
    }

    /// Multiplicative order, given a known multiple of it.
    pub fn order_dividing(&self, a: &ExtElement, bound: u64) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::ZeroHasNoOrder);
        }
        if !self.is_one(&self.pow(a, bound)) {
            return Err(Error::Internal("bound is not a multiple of the order".into()));
        }
        let mut ord = bound;
        for l in numtheory::factorize(bound).primes() {
            while ord % l == 0 && self.is_one(&self.pow(a, ord / l)) {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Multiplicative order; needs `size - 1` to fit in 64 bits.
    pub fn element_order(&self, a: &ExtElement) -> Result<u64> {
        let group = (self.size() - 1u32)
            .to_u64()
            .ok_or_else(|| Error::SizeLimitExceeded("extension group order exceeds 64 bits".into()))?;
        self.order_dividing(a, group)
    }
}

impl Ring for ExtField {
    type Elem = ExtElement;

    fn zero(&self) -> ExtElement {
        ExtElement(vec![FieldElement::ZERO; self.m])
    }
    fn one(&self) -> ExtElement {
        self.embed(FieldElement::ONE)
    }
    fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement(a.0.iter().zip(&b.0).map(|(x, y)| self.base.add_elem(*x, *y)).collect())
    }
    fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement(a.0.iter().zip(&b.0).map(|(x, y)| self.base.sub(x, y)).collect())
    }
    fn neg(&self, a: &ExtElement) -> ExtElement {
        ExtElement(a.0.iter().map(|x| self.base.neg(x)).collect())
    }
    fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let m = self.m;
        let gf = &self.base;
        let mut prod = vec![FieldElement::ZERO; 2 * m - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = gf.add_elem(prod[i + j], gf.mul_elem(*x, *y));
            }
        }
        let md = self.modulus.coeffs();
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c.0 == 0 {
                continue;
            }
            for j in 0..m {
                let t = gf.mul_elem(c, md[j]);
                prod[i - m + j] = gf.sub(&prod[i - m + j], &t);
            }
        }
        prod.truncate(m);
        ExtElement(prod)
    }
    fn is_zero(&self, a: &ExtElement) -> bool {
        a.0.iter().all(|c| c.0 == 0)
    }
    fn is_unit(&self, a: &ExtElement) -> bool {
        !self.is_zero(a)
    }
    fn inv(&self, a: &ExtElement) -> Option<ExtElement> {
        if self.is_zero(a) {
            return None;
        }
        let pr = PolyRing::new(self.base.clone());
        pr.inv_mod(&self.as_poly(a), &self.modulus).map(|f| self.elem_of_poly(f))
    }
    fn conj(&self, a: &ExtElement) -> ExtElement {
        self.pow(a, self.base.q())
    }
    fn render(&self, a: &ExtElement) -> String {
        let pr = PolyRing::new(self.base.clone());
        pr.render(&self.as_poly(a)).replace('x', "y")
    }
}

impl Field for ExtField {}

/// The extension of degree `m = ord_n(q^2)` together with an element of
/// multiplicative order exactly `n`.
///
/// Candidates `x` are scanned by index and `α = x^((size - 1)/n)` is kept
/// for the first `x` whose power has order exactly `n`; only the prime
/// factors of `n` are needed for that check.
pub fn primitive_nth_root(field: &Gf, n: u64) -> Result<(ExtField, ExtElement)> {
    let p = field.p();
    if n == 0 || n % p == 0 {
        return Err(Error::CharacteristicDividesN { p, n });
    }
    let q2_mod_n = if n == 1 { 0 } else { field.size() % n };
    let m = numtheory::mult_order(q2_mod_n, n)? as usize;
    let ext = ExtField::new(field, m);
    let cofactor = (ext.size() - 1u32) / n;
    let primes: Vec<u64> = numtheory::factorize(n).primes().collect();
    let mut index = 1u64;
    loop {
        let x = ext.element_from_index(index);
        index += 1;
        if ext.is_zero(&x) {
            continue;
        }
        let alpha = ext.pow_big(&x, &cofactor);
        if primes.iter().all(|&l| !ext.is_one(&ext.pow(&alpha, n / l))) {
            return Ok((ext, alpha));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_is_defined_by_x2_x_1() {
        let gf = Gf::build(2, 1).unwrap();
        assert_eq!(gf.modulus(), &[1, 1, 1]);
        assert_eq!(gf.size(), 4);
        assert_eq!(gf.q(), 2);
    }

    #[test]
    fn f9_modulus_is_lex_least_quadratic() {
        // brute force: x^2 + c1 x + c0 is irreducible over F_3 iff it has no root
        let mut irreducible = Vec::new();
        for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                if (0..3u64).all(|x| (x * x + c1 * x + c0) % 3 != 0) {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(irreducible.len(), 3);
        let gf = Gf::build(3, 1).unwrap();
        assert_eq!(gf.modulus(), irreducible[0].as_slice());
        assert_eq!(gf.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        assert_eq!(Gf::build(4, 1).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert!(matches!(Gf::build(2, 32), Err(Error::SizeLimitExceeded(_))));
        assert!(matches!(Gf::build_with_limit(3, 2, 80), Err(Error::SizeLimitExceeded(_))));
        assert_eq!(Gf::for_q(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn conjugation_in_f4() {
        let gf = Gf::build(2, 1).unwrap();
        let w = gf.generator_w();
        assert_eq!(gf.conjugate(FieldElement::ONE), FieldElement::ONE);
        assert_eq!(gf.conjugate(w), gf.mul_elem(w, w));
        for a in gf.elements() {
            assert_eq!(gf.conjugate(gf.conjugate(a)), a);
        }
    }

    #[test]
    fn orders_by_power_scan() {
        let scan = |gf: &Gf, a: FieldElement| {
            let mut x = a;
            let mut s = 1;
            while x != FieldElement::ONE {
                x = gf.mul_elem(x, a);
                s += 1;
            }
            s
        };
        let f4 = Gf::build(2, 1).unwrap();
        assert_eq!(f4.element_order(FieldElement::ONE).unwrap(), 1);
        assert_eq!(f4.element_order(f4.generator_w()).unwrap(), 3);
        assert_eq!(f4.element_order(FieldElement::ZERO), Err(Error::ZeroHasNoOrder));
        let f9 = Gf::build(3, 1).unwrap();
        let g = f9.lex_least_generator();
        assert_eq!(scan(&f9, g), 8);
        assert_eq!(f9.element_order(g).unwrap(), 8);
        for a in f9.elements().skip(1) {
            assert_eq!(f9.element_order(a).unwrap(), scan(&f9, a));
        }
    }

    #[test]
    fn table_and_schoolbook_multiplication_agree() {
        for (p, e) in [(2, 2), (3, 1), (5, 1), (7, 1), (3, 2), (2, 3)] {
            let gf = Gf::build(p, e).unwrap();
            for a in gf.elements() {
                for b in gf.elements().step_by(3) {
                    assert_eq!(gf.mul_elem(a, b), gf.mul_slow(a, b));
                    assert_eq!(gf.add_elem(a, b), gf.add_digits(a, b));
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        // q = 2^10, q^2 = 2^20: no log tables
        let gf = Gf::build(2, 10).unwrap();
        assert!(gf.inner.tables.is_none());
        let a = gf.element_from_index(123_457);
        let inv = gf.inverse(a).unwrap();
        assert_eq!(gf.mul_elem(a, inv), FieldElement::ONE);
        assert_eq!(gf.conjugate(gf.conjugate(a)), a);
        assert_eq!((gf.size() - 1) % gf.element_order(a).unwrap(), 0);
    }

    #[test]
    fn moduli_pass_rabin_test() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1)] {
            let gf = Gf::build(p, e).unwrap();
            let prime = Gf::prime(p);
            let pr = PolyRing::new(prime.clone());
            let f = pr.from_coeffs(gf.modulus().iter().map(|&c| prime.from_int(c as i64)).collect());
            assert!(pr.is_irreducible(&f), "p={p} e={e}");
        }
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = Gf::prime(2);
        let pr2 = PolyRing::new(f2.clone());
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        assert!(pr2.is_irreducible(&pr2.from_coeffs(vec![one, one, one])));
        assert!(pr2.is_irreducible(&pr2.from_coeffs(vec![one, one, zero, one])));
        assert!(!pr2.is_irreducible(&pr2.from_coeffs(vec![one, zero, one])));
        let f4 = Gf::build(2, 1).unwrap();
        let pr4 = PolyRing::new(f4.clone());
        assert!(!pr4.is_irreducible(&pr4.from_coeffs(vec![one, one, one])));
    }

    #[test]
    fn rabin_and_ben_or_agree_on_all_small_polynomials() {
        let gf = Gf::build(2, 1).unwrap();
        let pr = PolyRing::new(gf.clone());
        for d in 1..=4usize {
            for idx in 0..4u64.pow(d as u32) {
                let mut c: Vec<FieldElement> =
                    (0..d).map(|i| FieldElement((idx >> (2 * i)) & 3)).collect();
                c.push(FieldElement::ONE);
                let f = pr.from_coeffs(c);
                assert_eq!(pr.is_irreducible(&f), pr.is_irreducible_ben_or(&f));
            }
        }
    }

    #[test]
    fn primitive_roots() {
        let f4 = Gf::build(2, 1).unwrap();
        let (ext, alpha) = primitive_nth_root(&f4, 3).unwrap();
        assert_eq!(ext.degree(), 1);
        let a = ext.descend(&alpha).unwrap();
        let w = f4.generator_w();
        assert!(a == w || a == f4.mul_elem(w, w));
        assert_eq!(
            primitive_nth_root(&f4, 2).unwrap_err(),
            Error::CharacteristicDividesN { p: 2, n: 2 }
        );

        let f9 = Gf::build(3, 1).unwrap();
        let (ext, alpha) = primitive_nth_root(&f9, 7).unwrap();
        assert_eq!(ext.degree(), 3);
        assert_eq!(ext.element_order(&alpha).unwrap(), 7);
    }

    #[test]
    fn embedding_maps_modulus_root_to_root() {
        let f9 = Gf::build(3, 1).unwrap();
        let ext = ExtField::new(&f9, 4);
        let w = ext.embed_image().clone();
        let mut acc = ext.zero();
        for &c in f9.modulus().iter().rev() {
            acc = ext.add(&ext.mul(&acc, &w), &ext.embed(f9.from_int(c as i64)));
        }
        assert!(ext.is_zero(&acc));
        let pr = PolyRing::new(f9.clone());
        assert!(pr.is_irreducible(ext.modulus()));
    }

    #[test]
    fn render_and_parse() {
        let f9 = Gf::build(3, 1).unwrap();
        for a in f9.elements() {
            let s = f9.render_elem(a);
            assert_eq!(f9.parse_elem(&s).unwrap(), a, "{s}");
        }
        let f8 = Gf::build(2, 3).unwrap();
        assert_eq!(f8.render_elem(f8.element(&[1, 0, 1, 1])), "w^3+w^2+1");
        assert!(f8.parse_elem("w^6").is_err());
        assert!(f8.parse_elem("2*w").is_err());
        assert!(f8.parse_elem("").is_err());
    }
}
