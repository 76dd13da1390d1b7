//! The chain ring `R = F_{q^2}[u]/(u^t)`, the Hensel-lifted factorization of
//! `x^n - r0` over it, and Hermitian self-dual cyclic codes of length `n`.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, Gf};
use crate::poly::{ParseElem, Poly, PolyRing, Ring};
use crate::scrim::{self, FactorizationReport};

/// An element `Σ a_i u^i`, `a_i ∈ F_{q^2}`, of length `t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChainRingElem {
    coords: Vec<FieldElement>,
}

impl ChainRingElem {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// The image modulo `u`.
    pub fn residue(&self) -> FieldElement {
        self.coords[0]
    }
}

/// `F_{q^2}[u]/(u^t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRing {
    field: Gf,
    t: usize,
}

impl ChainRing {
    pub fn new(field: Gf, t: usize) -> Result<ChainRing> {
        if t < 1 {
            return Err(Error::NilpotencyTooSmall(t));
        }
        Ok(ChainRing { field, t })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    /// Nilpotency index.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn elem(&self, coords: &[FieldElement]) -> ChainRingElem {
        assert!(coords.len() <= self.t, "more than t coordinates");
        let mut c = coords.to_vec();
        c.resize(self.t, FieldElement::ZERO);
        ChainRingElem { coords: c }
    }

    pub fn from_field(&self, a: FieldElement) -> ChainRingElem {
        self.elem(&[a])
    }

    /// `u^k` (zero when `k >= t`).
    pub fn u_pow(&self, k: usize) -> ChainRingElem {
        let mut c = vec![FieldElement::ZERO; self.t];
        if k < self.t {
            c[k] = FieldElement::ONE;
        }
        ChainRingElem { coords: c }
    }

    /// Largest `v` with `u^v | a`; `t` for zero.
    pub fn valuation(&self, a: &ChainRingElem) -> usize {
        a.coords.iter().position(|c| *c != FieldElement::ZERO).unwrap_or(self.t)
    }

    /// Some `b` with `u^k b = a`, given `valuation(a) >= k`.
    pub fn div_u_pow(&self, a: &ChainRingElem, k: usize) -> ChainRingElem {
        debug_assert!(self.valuation(a) >= k);
        let mut c = a.coords[k..].to_vec();
        c.resize(self.t, FieldElement::ZERO);
        ChainRingElem { coords: c }
    }

    pub fn lift_poly(&self, f: &Poly<FieldElement>) -> Poly<ChainRingElem> {
        PolyRing::new(self.clone()).from_coeffs(f.coeffs().iter().map(|&c| self.from_field(c)).collect())
    }

    /// Coefficient `k` of `u` in every coefficient of `f`.
    pub fn u_coefficient(&self, f: &Poly<ChainRingElem>, k: usize) -> Poly<FieldElement> {
        PolyRing::new(self.field.clone()).from_coeffs(f.coeffs().iter().map(|c| c.coords[k]).collect())
    }
}

impl Ring for ChainRing {
    type Elem = ChainRingElem;

    fn zero(&self) -> ChainRingElem {
        self.u_pow(self.t)
    }
    fn one(&self) -> ChainRingElem {
        self.u_pow(0)
    }
    fn add(&self, a: &ChainRingElem, b: &ChainRingElem) -> ChainRingElem {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| self.field.add_elem(*x, *y)).collect();
        ChainRingElem { coords }
    }
    fn sub(&self, a: &ChainRingElem, b: &ChainRingElem) -> ChainRingElem {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| self.field.sub(x, y)).collect();
        ChainRingElem { coords }
    }
    fn neg(&self, a: &ChainRingElem) -> ChainRingElem {
        ChainRingElem { coords: a.coords.iter().map(|x| self.field.neg(x)).collect() }
    }
    fn mul(&self, a: &ChainRingElem, b: &ChainRingElem) -> ChainRingElem {
        let mut c = vec![FieldElement::ZERO; self.t];
        for (i, x) in a.coords.iter().enumerate() {
            if *x == FieldElement::ZERO {
                continue;
            }
            for (j, y) in b.coords[..self.t - i].iter().enumerate() {
                c[i + j] = self.field.add_elem(c[i + j], self.field.mul_elem(*x, *y));
            }
        }
        ChainRingElem { coords: c }
    }
    fn is_zero(&self, a: &ChainRingElem) -> bool {
        a.coords.iter().all(|c| *c == FieldElement::ZERO)
    }
    fn is_unit(&self, a: &ChainRingElem) -> bool {
        a.coords[0] != FieldElement::ZERO
    }
    fn inv(&self, a: &ChainRingElem) -> Option<ChainRingElem> {
        let a0_inv = self.field.inverse(a.coords[0])?;
        // b_i = -a_0^{-1} Σ_{j=1..i} a_j b_{i-j}
        let mut b = vec![FieldElement::ZERO; self.t];
        b[0] = a0_inv;
        for i in 1..self.t {
            let mut s = FieldElement::ZERO;
            for j in 1..=i {
                s = self.field.add_elem(s, self.field.mul_elem(a.coords[j], b[i - j]));
            }
            b[i] = self.field.neg(&self.field.mul_elem(a0_inv, s));
        }
        Some(ChainRingElem { coords: b })
    }
    fn conj(&self, a: &ChainRingElem) -> ChainRingElem {
        ChainRingElem { coords: a.coords.iter().map(|c| self.field.conjugate(*c)).collect() }
    }
    /// Fully expanded, e.g. `w*u+u+w+1`.
    fn render(&self, a: &ChainRingElem) -> String {
        if self.is_zero(a) {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in a.coords.iter().enumerate().rev() {
            if *c == FieldElement::ZERO {
                continue;
            }
            let suffix = match i {
                0 => String::new(),
                1 => "u".to_string(),
                i => format!("u^{i}"),
            };
            for term in self.field.render_elem(*c).split('+') {
                terms.push(match (term, suffix.as_str()) {
                    (t, "") => t.to_string(),
                    ("1", s) => s.to_string(),
                    (t, s) => format!("{t}*{s}"),
                });
            }
        }
        terms.join("+")
    }
}

impl ParseElem for ChainRing {
    fn parse_elem(&self, s: &str) -> Result<ChainRingElem> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty ring element".into()));
        }
        let mut acc = self.zero();
        for term in s.split('+') {
            let bad = || Error::Parse(format!("bad ring term {term:?}"));
            let mut field_part = Vec::new();
            let mut k = 0usize;
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix('u') {
                    k += match rest.strip_prefix('^') {
                        Some(e) => e.parse::<usize>().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                } else {
                    field_part.push(factor);
                }
            }
            let c = if field_part.is_empty() {
                FieldElement::ONE
            } else {
                self.field.parse_elem(&field_part.join("*"))?
            };
            if k >= self.t {
                return Err(bad());
            }
            acc = self.add(&acc, &self.mul(&self.from_field(c), &self.u_pow(k)));
        }
        Ok(acc)
    }
}

/// `r0 = (1 + u c)(1 + u conj(c))^{-1}` with `c` the first element of
/// `F_{q^2}` outside `F_q`; then `r0 ≡ 1 mod u`, `(r0 - 1)/u` is a unit and
/// `r0 conj(r0) = 1`.
pub fn make_r0(field: &Gf, t: usize) -> Result<(ChainRing, ChainRingElem)> {
    if t < 2 {
        return Err(Error::NilpotencyTooSmall(t));
    }
    let ring = ChainRing::new(field.clone(), t)?;
    let c = field
        .elements()
        .find(|&a| !field.in_base_subfield(a))
        .expect("F_q is a proper subfield");
    let num = ring.elem(&[FieldElement::ONE, c]);
    let den = ring.elem(&[FieldElement::ONE, field.conjugate(c)]);
    let r0 = ring.mul(&num, &ring.inv(&den).expect("1 + u a is a unit"));
    Ok((ring, r0))
}

/// `x^n - r0 = ∏ f_i` over `R`, lifted from `x^n - 1 = ∏ h_i` over
/// `F_{q^2}`; factors are ordered by the coset representative of `h_i`.
#[derive(Debug, Clone)]
pub struct LiftedFactorization {
    pub q: u64,
    pub n: u64,
    ring: ChainRing,
    pub r0: ChainRingElem,
    pub factors: Vec<Poly<ChainRingElem>>,
    pub residues: Vec<Poly<FieldElement>>,
    /// `f_{dagger_perm[i]} = f_i†`.
    pub dagger_perm: Vec<usize>,
    report: FactorizationReport,
}

impl LiftedFactorization {
    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn poly_ring(&self) -> PolyRing<ChainRing> {
        PolyRing::new(self.ring.clone())
    }

    pub fn t(&self) -> usize {
        self.ring.t
    }

    pub fn report(&self) -> &FactorizationReport {
        &self.report
    }

    /// `∏ f_i = x^n - r0`.
    pub fn product_is_exact(&self) -> bool {
        let pr = self.poly_ring();
        pr.product(self.factors.iter()) == pr.xn_minus(self.n as usize, &self.r0)
    }

    /// `f_i = f_i†` exactly when `h_i = h_i†`, for every `i`.
    pub fn dagger_is_preserved(&self) -> bool {
        let pr = self.poly_ring();
        let fr = self.report.ring();
        self.factors.iter().zip(&self.residues).all(|(f, h)| {
            let f_self = pr.conjugate_reciprocal_dagger(f).as_ref() == Ok(f);
            let h_self = fr.conjugate_reciprocal_dagger(h).as_ref() == Ok(h);
            f_self == h_self
        })
    }

    /// Permutation `i ↦ i'` with `f_{i'} = f_i*`; only defined when `r0^2 = 1`.
    pub fn star_perm(&self) -> Result<Vec<usize>> {
        let r = &self.ring;
        if r.mul(&self.r0, &self.r0) != r.one() {
            return Err(Error::Unsupported(
                "reciprocal factors need r0^2 = 1, which this r0 does not satisfy".into(),
            ));
        }
        let pr = self.poly_ring();
        self.factors
            .iter()
            .map(|f| {
                let s = pr.reciprocal_star(f)?;
                self.factors
                    .iter()
                    .position(|g| *g == s)
                    .ok_or_else(|| Error::LiftMismatch("reciprocal of a factor is missing".into()))
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree().expect("nonzero factor")).collect()
    }

    /// Indices with `î = i`.
    pub fn self_dagger_indices(&self) -> Vec<usize> {
        (0..self.factors.len()).filter(|&i| self.dagger_perm[i] == i).collect()
    }

    /// Pairs `(i, î)` with `i < î`.
    pub fn dagger_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.factors.len())
            .filter(|&i| self.dagger_perm[i] > i)
            .map(|i| (i, self.dagger_perm[i]))
            .collect()
    }
}

fn check_params(q: u64, n: u64, t: usize) -> Result<()> {
    if n == 0 || crate::numtheory::gcd(q, n) != 1 {
        return Err(Error::NotCoprime { a: q, n });
    }
    if t < 2 {
        return Err(Error::NilpotencyTooSmall(t));
    }
    Ok(())
}

/// Linear Hensel lifting, one power of `u` per step.
pub fn hensel_lift(q: u64, n: u64, t: usize) -> Result<LiftedFactorization> {
    check_params(q, n, t)?;
    let field = Gf::for_q(q)?;
    let report = scrim::factor_over(&field, n)?;
    let (ring, r0) = make_r0(&field, t)?;
    let fr = report.ring();
    let pr = PolyRing::new(ring.clone());
    let residues: Vec<Poly<FieldElement>> = report.factors().iter().map(|f| f.poly.clone()).collect();
    // s_i = (∏_{j≠i} h_j)^{-1} mod h_i
    let cofactors: Vec<Poly<FieldElement>> = (0..residues.len())
        .map(|i| {
            let others = fr.product(residues.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h));
            fr.inv_mod(&others, &residues[i])
                .ok_or_else(|| Error::LiftMismatch("residue factors are not coprime".into()))
        })
        .collect::<Result<_>>()?;
    let target = pr.xn_minus(n as usize, &r0);
    let mut factors: Vec<Poly<ChainRingElem>> = residues.iter().map(|h| ring.lift_poly(h)).collect();
    for k in 1..t {
        let err = pr.sub(&target, &pr.product(factors.iter()));
        if err.coeffs().iter().any(|c| ring.valuation(c) < k) {
            return Err(Error::LiftMismatch(format!("product is wrong modulo u^{k}")));
        }
        let e = ring.u_coefficient(&err, k);
        for (i, f) in factors.iter_mut().enumerate() {
            let a = fr.rem(&fr.mul(&e, &cofactors[i]), &residues[i])?;
            let step: Vec<ChainRingElem> =
                a.coeffs().iter().map(|&c| ring.mul(&ring.from_field(c), &ring.u_pow(k))).collect();
            *f = pr.add(f, &pr.from_coeffs(step));
        }
    }
    let lift = LiftedFactorization {
        q,
        n,
        ring: ring.clone(),
        r0,
        dagger_perm: Vec::new(),
        factors,
        residues,
        report,
    };
    if !lift.product_is_exact() {
        return Err(Error::LiftMismatch("product of lifted factors is not x^n - r0".into()));
    }
    let dagger_perm = lift
        .factors
        .iter()
        .map(|f| {
            let d = pr.conjugate_reciprocal_dagger(f)?;
            lift.factors
                .iter()
                .position(|g| *g == d)
                .ok_or_else(|| Error::LiftMismatch("conjugate-reciprocal of a factor is missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftedFactorization { dagger_perm, ..lift })
}

/// The cyclic code `⟨∏ f_i^{k_i}⟩` over `R`.
#[derive(Debug, Clone)]
pub struct CyclicCodeCR {
    pub lift: Arc<LiftedFactorization>,
    pub k: Vec<usize>,
}

impl PartialEq for CyclicCodeCR {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lift, &other.lift) && self.k == other.k
    }
}

impl CyclicCodeCR {
    pub fn new(lift: Arc<LiftedFactorization>, k: Vec<usize>) -> Result<CyclicCodeCR> {
        if k.len() != lift.factors.len() || k.iter().any(|&ki| ki > lift.t()) {
            return Err(Error::Parse(format!(
                "exponent vector must have {} entries in 0..={}",
                lift.factors.len(),
                lift.t()
            )));
        }
        Ok(CyclicCodeCR { lift, k })
    }

    /// `log_{q^2} |C| = Σ (t - k_i) deg f_i`.
    pub fn log_cardinality(&self) -> u64 {
        let t = self.lift.t();
        self.k
            .iter()
            .zip(self.lift.degrees())
            .map(|(&k, d)| ((t - k) * d) as u64)
            .sum()
    }

    /// `∏ f_i^{k_i} mod (x^n - 1)`.
    pub fn generator(&self) -> Poly<ChainRingElem> {
        let pr = self.lift.poly_ring();
        let g = pr.product(
            self.lift
                .factors
                .iter()
                .zip(&self.k)
                .map(|(f, &k)| pr.pow(f, k as u64))
                .collect::<Vec<_>>()
                .iter(),
        );
        pr.rem(&g, &pr.xn_minus_one(self.lift.n as usize)).expect("monic modulus")
    }

    /// `k'_{î} = t - k_i`.
    pub fn hermitian_dual(&self) -> CyclicCodeCR {
        self.permuted_dual(&self.lift.dagger_perm)
    }

    /// `k'_{i'} = t - k_i` for the reciprocal permutation; needs `r0^2 = 1`.
    pub fn euclidean_dual(&self) -> Result<CyclicCodeCR> {
        Ok(self.permuted_dual(&self.lift.star_perm()?))
    }

    fn permuted_dual(&self, perm: &[usize]) -> CyclicCodeCR {
        let t = self.lift.t();
        let mut k = vec![0; self.k.len()];
        for (i, &ki) in self.k.iter().enumerate() {
            k[perm[i]] = t - ki;
        }
        CyclicCodeCR { lift: self.lift.clone(), k }
    }

    /// `k_i + k_î = t` for all `i`.
    pub fn is_hermitian_self_dual(&self) -> bool {
        let t = self.lift.t();
        self.k
            .iter()
            .enumerate()
            .all(|(i, &ki)| ki + self.k[self.lift.dagger_perm[i]] == t)
    }
}

pub fn self_dual_exists(q: u64, n: u64, t: usize) -> Result<bool> {
    check_params(q, n, t)?;
    scrim::count_direct(q, n)?;
    Ok(t % 2 == 0)
}

/// `(t + 1)^{|Λ|}` for even `t`, zero otherwise.
pub fn count_self_dual(q: u64, n: u64, t: usize) -> Result<BigUint> {
    check_params(q, n, t)?;
    let lambda = scrim::count_direct(q, n)?.lambda;
    if t % 2 == 1 {
        return Ok(BigUint::from(0u32));
    }
    Ok(BigUint::from(t as u64 + 1).pow(lambda as u32))
}

/// Self-dual codes: `t/2` on self-dagger indices, `(k, t - k)` on each
/// dagger pair; the first pair varies slowest.
pub fn enumerate_self_dual(lift: &Arc<LiftedFactorization>, budget: &Budget) -> Result<Vec<CyclicCodeCR>> {
    let t = lift.t();
    if t % 2 == 1 {
        return Ok(Vec::new());
    }
    let pairs = lift.dagger_pairs();
    let count = (t as u128 + 1).checked_pow(pairs.len() as u32);
    match count {
        Some(c) if c <= budget.enumeration_cap() as u128 => {}
        _ => return Err(Error::EnumerationTooLarge(format!("{}^{} codes", t + 1, pairs.len()))),
    }
    let mut base = vec![0usize; lift.factors.len()];
    for i in lift.self_dagger_indices() {
        base[i] = t / 2;
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; pairs.len()];
    loop {
        let mut k = base.clone();
        for (&(i, j), &d) in pairs.iter().zip(&digits) {
            k[i] = d;
            k[j] = t - d;
        }
        out.push(CyclicCodeCR { lift: lift.clone(), k });
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] <= t {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// What the codeword-level check found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub self_orthogonal: bool,
    /// `log_{q^2} |C|` from the diagonal form of the shift matrix.
    pub log_cardinality: u64,
    /// `Σ (t - k_i) deg f_i`.
    pub expected_log_cardinality: u64,
    pub self_dual: bool,
}

/// `log_{|F|}` of the size of the `R`-row-space of `rows`, by reducing to a
/// diagonal of `u`-powers with unimodular row and column operations.
pub fn row_space_log_size(ring: &ChainRing, rows: &[Vec<ChainRingElem>]) -> u64 {
    let mut m: Vec<Vec<ChainRingElem>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let t = ring.t;
    let mut total = 0u64;
    for p in 0..nrows.min(ncols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in m.iter().enumerate().skip(p) {
            for (c, x) in row.iter().enumerate().skip(p) {
                let v = ring.valuation(x);
                if v < t && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        m.swap(p, r);
        for row in m.iter_mut() {
            row.swap(p, c);
        }
        let unit_inv = ring.inv(&ring.div_u_pow(&m[p][p], v)).expect("pivot is u^v times a unit");
        let pivot_row = m[p].clone();
        for row in m.iter_mut().skip(p + 1) {
            if ring.is_zero(&row[p]) {
                continue;
            }
            let f = ring.mul(&ring.div_u_pow(&row[p], v), &unit_inv);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = ring.sub(x, &ring.mul(&f, y));
            }
        }
        // the rest of row p is divisible by u^v; clearing it by column
        // operations only touches row p since column p is now zero below
        for x in &mut m[p][p + 1..ncols] {
            *x = ring.zero();
        }
        total += (t - v) as u64;
    }
    total
}

/// Checks a code at the level of codewords: self-orthogonality of all cyclic
/// shifts of the generator under `⟨a, b⟩ = Σ a_i conj(b_i)`, and the code
/// size from the diagonal form of the shift matrix.
pub fn oracle_report(c: &CyclicCodeCR, budget: &Budget) -> Result<OracleReport> {
    let lift = &c.lift;
    let ring = lift.ring();
    let n = lift.n as usize;
    let t = ring.t;
    let elem_bytes = t * std::mem::size_of::<FieldElement>();
    if !budget.allows_matrix(n, n, elem_bytes) {
        return Err(Error::OracleTooLarge(format!("{n} x {n} matrix over R")));
    }
    let g = c.generator();
    let mut base = g.coeffs().to_vec();
    base.resize(n, ring.zero());
    let shifts: Vec<Vec<ChainRingElem>> = (0..n)
        .map(|i| (0..n).map(|j| base[(j + n - i) % n].clone()).collect())
        .collect();
    let conj_shifts: Vec<Vec<ChainRingElem>> =
        shifts.iter().map(|s| s.iter().map(|x| ring.conj(x)).collect()).collect();
    let self_orthogonal = shifts.iter().all(|a| {
        conj_shifts.iter().all(|b| {
            let dot = a.iter().zip(b).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
            ring.is_zero(&dot)
        })
    });
    let log_cardinality = row_space_log_size(ring, &shifts);
    let self_dual = self_orthogonal && 2 * log_cardinality == (t * n) as u64;
    Ok(OracleReport {
        self_orthogonal,
        log_cardinality,
        expected_log_cardinality: c.log_cardinality(),
        self_dual,
    })
}

/// `true` iff the code is self-orthogonal and `|C|^2 = |R|^n`.
pub fn codeword_duality_oracle(c: &CyclicCodeCR, budget: &Budget) -> Result<bool> {
    Ok(oracle_report(c, budget)?.self_dual)
}
