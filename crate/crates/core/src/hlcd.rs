//! Hermitian complementary-dual cyclic codes over `F_{q^2}` of any length
//! `n = p^ν n'`, repeated roots included.

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, Gf};
use crate::linalg;
use crate::numtheory;
use crate::poly::{Poly, PolyRing, Ring};
use crate::scrim::{self, FactorizationReport};

/// A cyclic code of length `n` given by its monic generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCodeGF {
    pub q: u64,
    pub n: u64,
    pub generator: Poly<FieldElement>,
}

impl CyclicCodeGF {
    pub fn dimension(&self) -> u64 {
        self.n - self.generator.degree().expect("generator is nonzero") as u64
    }
}

/// Verdicts of the three LCD tests on one code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcdChecks {
    /// `gcd(g, h†) = 1`.
    pub coprime_dual: bool,
    /// `g = g†` and every irreducible factor has multiplicity `0` or `p^ν`.
    pub multiplicity: bool,
    /// Direct intersection of the code with its dual; `None` when over budget.
    pub intersection: Option<bool>,
}

impl LcdChecks {
    pub fn agree(&self) -> bool {
        self.coprime_dual == self.multiplicity
            && self.intersection.is_none_or(|c| c == self.coprime_dual)
    }
}

/// Everything needed to reason about cyclic codes of one length `n`.
#[derive(Debug, Clone)]
pub struct LcdContext {
    q: u64,
    n: u64,
    nu: u32,
    p_nu: u64,
    /// Factorization of `x^{n'} - 1`.
    report: FactorizationReport,
    xn_minus_one: Poly<FieldElement>,
    budget: Budget,
}

fn split_char(p: u64, n: u64) -> (u32, u64) {
    let mut nu = 0;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        nu += 1;
    }
    (nu, rest)
}

impl LcdContext {
    pub fn new(q: u64, n: u64) -> Result<LcdContext> {
        Self::with_budget(q, n, Budget::default())
    }

    pub fn with_budget(q: u64, n: u64, budget: Budget) -> Result<LcdContext> {
        let field = Gf::for_q(q)?;
        if n == 0 {
            return Err(Error::NotCoprime { a: q, n });
        }
        let (nu, n_prime) = split_char(field.p(), n);
        let report = scrim::factor_over(&field, n_prime)?;
        let xn_minus_one = PolyRing::new(field.clone()).xn_minus_one(n as usize);
        Ok(LcdContext {
            q,
            n,
            nu,
            p_nu: field.p().pow(nu),
            report,
            xn_minus_one,
            budget,
        })
    }

    pub fn field(&self) -> &Gf {
        self.report.field()
    }

    pub fn ring(&self) -> PolyRing<Gf> {
        self.report.ring()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `ν` with `n = p^ν n'`.
    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn n_prime(&self) -> u64 {
        self.report.n
    }

    /// The factorization of `x^{n'} - 1`; raised to `p^ν` it gives `x^n - 1`.
    pub fn report(&self) -> &FactorizationReport {
        &self.report
    }

    /// Wraps a divisor of `x^n - 1`, normalized to be monic.
    pub fn code(&self, g: &Poly<FieldElement>) -> Result<CyclicCodeGF> {
        let pr = self.ring();
        if g.is_zero() {
            return Err(Error::NotADivisor);
        }
        let g = pr.monic(g);
        if !pr.divides(&g, &self.xn_minus_one)? {
            return Err(Error::NotADivisor);
        }
        Ok(CyclicCodeGF { q: self.q, n: self.n, generator: g })
    }

    /// `h†` with `h = (x^n - 1)/g`; generates the Hermitian dual.
    pub fn hermitian_dual_generator(&self, c: &CyclicCodeGF) -> Poly<FieldElement> {
        let pr = self.ring();
        let h = pr
            .div_exact(&self.xn_minus_one, &c.generator)
            .expect("generator divides x^n - 1");
        pr.conjugate_reciprocal_dagger(&h)
            .expect("divisors of x^n - 1 have nonzero constant term")
    }

    pub fn coprime_dual_test(&self, c: &CyclicCodeGF) -> bool {
        let pr = self.ring();
        pr.gcd(&c.generator, &self.hermitian_dual_generator(c)) == pr.one()
    }

    pub fn multiplicity_test(&self, c: &CyclicCodeGF) -> bool {
        let pr = self.ring();
        let g = &c.generator;
        if pr.conjugate_reciprocal_dagger(g).as_ref() != Ok(g) {
            return false;
        }
        self.report.factors().iter().all(|f| {
            let k = pr.multiplicity(&f.poly, g);
            k == 0 || k == self.p_nu
        })
    }

    /// `C ∩ C^⊥H = {0}` by linear algebra. With `G` a generator matrix,
    /// `C^⊥H` is the conjugate of `ker G`, so the code is LCD exactly when
    /// `G` stacked on `conj(ker G)` has full rank `n`.
    pub fn intersection_test(&self, c: &CyclicCodeGF) -> Result<bool> {
        let n = self.n as usize;
        if !self.budget.allows_matrix(2 * n, n, std::mem::size_of::<FieldElement>()) {
            return Err(Error::OracleTooLarge(format!("{n} x {n} generator matrix")));
        }
        let gf = self.field();
        let k = c.dimension() as usize;
        let g = c.generator.coeffs();
        let rows: Vec<Vec<FieldElement>> = (0..k)
            .map(|i| {
                let mut row = vec![FieldElement::ZERO; n];
                row[i..i + g.len()].copy_from_slice(g);
                row
            })
            .collect();
        let mut stacked = rows.clone();
        for v in linalg::kernel(gf, &rows, n) {
            stacked.push(v.iter().map(|a| gf.conj(a)).collect());
        }
        Ok(linalg::rank(gf, &stacked) == n)
    }

    pub fn checks(&self, c: &CyclicCodeGF) -> LcdChecks {
        LcdChecks {
            coprime_dual: self.coprime_dual_test(c),
            multiplicity: self.multiplicity_test(c),
            intersection: self.intersection_test(c).ok(),
        }
    }

    /// All available tests, which must agree; disagreement is an internal
    /// error.
    pub fn is_hermitian_lcd(&self, c: &CyclicCodeGF) -> Result<bool> {
        let checks = self.checks(c);
        if !checks.agree() {
            return Err(Error::Internal(format!(
                "LCD tests disagree on {}: {checks:?}",
                self.ring().render(&c.generator)
            )));
        }
        Ok(checks.coprime_dual)
    }

    /// `2^{|Ω(n')| + |Λ(n')|}`.
    pub fn count(&self) -> BigUint {
        let c = self.report.counts.direct;
        BigUint::from(1u32) << (c.omega + c.lambda)
    }

    /// `∏ f^s ∏ (g g†)^t` with `s, t ∈ {0, p^ν}`, in binary counting order
    /// over the blocks (Ω factors then Λ pairs, each by coset
    /// representative).
    pub fn enumerate(&self) -> Result<Vec<CyclicCodeGF>> {
        let count = self.count();
        if count > BigUint::from(self.budget.enumeration_cap()) {
            return Err(Error::EnumerationTooLarge(format!("{count} codes")));
        }
        let pr = self.ring();
        let factors = self.report.factors();
        let mut blocks: Vec<Poly<FieldElement>> = self
            .report
            .omega_indices()
            .into_iter()
            .map(|i| factors[i].poly.clone())
            .collect();
        blocks.extend(
            self.report
                .lambda_indices()
                .into_iter()
                .map(|(i, j)| pr.mul(&factors[i].poly, &factors[j].poly)),
        );
        let blocks: Vec<_> = blocks.iter().map(|b| pr.pow(b, self.p_nu)).collect();
        let total = 1u64 << blocks.len();
        Ok((0..total)
            .map(|mask| {
                let g = pr.product((0..blocks.len()).filter(|b| mask >> b & 1 == 1).map(|b| &blocks[b]));
                CyclicCodeGF { q: self.q, n: self.n, generator: g }
            })
            .collect())
    }

    /// Every monic divisor of `x^n - 1`, as exponent vectors over the
    /// irreducible factors (ordered by coset representative) with entries in
    /// `[0, p^ν]`.
    pub fn all_divisors(&self) -> Result<Vec<(Vec<u64>, CyclicCodeGF)>> {
        let pr = self.ring();
        let factors = self.report.factors();
        let radix = self.p_nu + 1;
        let total = (radix as u128).checked_pow(factors.len() as u32);
        match total {
            Some(t) if t <= self.budget.enumeration_cap() as u128 => {}
            _ => return Err(Error::EnumerationTooLarge(format!("{radix}^{} divisors", factors.len()))),
        }
        let powers: Vec<Vec<Poly<FieldElement>>> = factors
            .iter()
            .map(|f| (0..radix).map(|k| pr.pow(&f.poly, k)).collect())
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u64; factors.len()];
        loop {
            let g = pr.product(exps.iter().enumerate().map(|(i, &k)| &powers[i][k as usize]));
            out.push((exps.clone(), CyclicCodeGF { q: self.q, n: self.n, generator: g }));
            let mut i = 0;
            loop {
                if i == exps.len() {
                    return Ok(out);
                }
                exps[i] += 1;
                if exps[i] < radix {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }
}

/// Number of Hermitian LCD cyclic codes of length `n` over `F_{q^2}`.
pub fn count_hermitian_lcd(q: u64, n: u64) -> Result<BigUint> {
    let field = Gf::for_q(q)?;
    if n == 0 {
        return Err(Error::NotCoprime { a: q, n });
    }
    let (_, n_prime) = split_char(field.p(), n);
    let c = scrim::count_direct(q, n_prime)?;
    Ok(BigUint::from(1u32) << (c.omega + c.lambda))
}

/// The Hermitian LCD cyclic codes of length `n`, each re-verified.
pub fn enumerate_hermitian_lcd(q: u64, n: u64) -> Result<Vec<CyclicCodeGF>> {
    let ctx = LcdContext::with_budget(q, n, Budget::from_env()?)?;
    let codes = ctx.enumerate()?;
    for c in &codes {
        if !ctx.is_hermitian_lcd(c)? {
            return Err(Error::Internal(format!(
                "enumerated code {} is not LCD",
                ctx.ring().render(&c.generator)
            )));
        }
    }
    Ok(codes)
}

/// `n = p^ν n'` for the characteristic `p` of `F_{q^2}`.
pub fn split_length(q: u64, n: u64) -> Result<(u32, u64)> {
    let (p, _) = numtheory::prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
    Ok(split_char(p, n))
}
