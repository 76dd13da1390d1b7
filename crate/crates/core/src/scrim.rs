//! Cyclotomic cosets, the factorization of `x^n - 1` over `F_{q^2}` into
//! self-conjugate-reciprocal factors (Ω) and conjugate-reciprocal pairs (Λ),
//! and three independent ways of counting them.

use crate::error::{Error, Result};
use crate::gf::{primitive_nth_root, FieldElement, Gf};
use crate::numtheory::{self, gcd, mult_order, two_adic_valuation};
use crate::poly::{Poly, PolyRing, Ring};

/// Extension degrees above this are refused by [`factor_xn_minus_1`].
pub const MAX_EXTENSION_DEGREE: u64 = 256;

/// An orbit `{ i q^(2j) mod n }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub n: u64,
    pub rep: u64,
    /// Sorted ascending.
    pub members: Vec<u64>,
}

impl Coset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

fn check_q(q: u64) -> Result<(u64, u32)> {
    numtheory::prime_power_decompose(q).ok_or(Error::NotPrimePower(q))
}

fn check_coprime(q: u64, n: u64) -> Result<()> {
    if n == 0 || gcd(q, n) != 1 {
        return Err(Error::NotCoprime { a: q, n });
    }
    Ok(())
}

/// The cosets of multiplication by `q^2` on `Z/n`, ordered by representative.
pub fn coset_partition(q: u64, n: u64) -> Result<Vec<Coset>> {
    check_q(q)?;
    check_coprime(q, n)?;
    let step = numtheory::mul_mod(q, q, n);
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for rep in 0..n {
        if seen[rep as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut i = rep;
        while !seen[i as usize] {
            seen[i as usize] = true;
            members.push(i);
            i = numtheory::mul_mod(i, step, n);
        }
        members.sort_unstable();
        out.push(Coset { n, rep, members });
    }
    Ok(out)
}

/// Representative of the coset of `-q * rep`.
pub fn partner_rep(cosets: &[Coset], q: u64, rep: u64) -> u64 {
    let n = cosets[0].n;
    let target = (n - numtheory::mul_mod(q % n, rep, n)) % n;
    cosets
        .iter()
        .find(|c| c.contains(target))
        .map(|c| c.rep)
        .expect("cosets partition Z/n")
}

/// Whether the factor indexed by `c` is its own conjugate-reciprocal, i.e.
/// `-q * rep` lies in the same coset.
pub fn is_scrim_coset(c: &Coset, q: u64) -> bool {
    let n = c.n;
    let target = (n - numtheory::mul_mod(q % n, c.rep, n)) % n;
    c.contains(target)
}

/// `(|Ω|, |Λ|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OmegaLambda {
    pub omega: u64,
    pub lambda: u64,
}

/// The counts produced by each method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountsByMethod {
    pub explicit: OmegaLambda,
    pub direct: OmegaLambda,
    /// The recursive method only counts Ω.
    pub recursive: u64,
}

impl CountsByMethod {
    pub fn agree(&self) -> bool {
        self.explicit == self.direct && self.direct.omega == self.recursive
    }
}

/// A monic irreducible factor of `x^n - 1` together with its coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleFactor {
    pub coset: Coset,
    pub poly: Poly<FieldElement>,
    /// Index (into the report's factor list) of the conjugate-reciprocal.
    pub partner: usize,
}

impl IrreducibleFactor {
    pub fn rep(&self) -> u64 {
        self.coset.rep
    }
}

/// `x^n - 1 = ∏_Ω f · ∏_Λ g g†` over `F_{q^2}`.
#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub q: u64,
    pub n: u64,
    field: Gf,
    /// Every irreducible factor, ordered by coset representative.
    factors: Vec<IrreducibleFactor>,
    pub counts: CountsByMethod,
}

impl FactorizationReport {
    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn ring(&self) -> PolyRing<Gf> {
        PolyRing::new(self.field.clone())
    }

    pub fn factors(&self) -> &[IrreducibleFactor] {
        &self.factors
    }

    /// Indices of the self-conjugate-reciprocal factors.
    pub fn omega_indices(&self) -> Vec<usize> {
        (0..self.factors.len())
            .filter(|&i| self.factors[i].partner == i)
            .collect()
    }

    /// Index pairs `(i, j)` with `f_j = f_i†`, `i < j`.
    pub fn lambda_indices(&self) -> Vec<(usize, usize)> {
        (0..self.factors.len())
            .filter(|&i| self.factors[i].partner > i)
            .map(|i| (i, self.factors[i].partner))
            .collect()
    }

    pub fn omega(&self) -> Vec<&Poly<FieldElement>> {
        self.omega_indices()
            .into_iter()
            .map(|i| &self.factors[i].poly)
            .collect()
    }

    pub fn lambda_pairs(&self) -> Vec<(&Poly<FieldElement>, &Poly<FieldElement>)> {
        self.lambda_indices()
            .into_iter()
            .map(|(i, j)| (&self.factors[i].poly, &self.factors[j].poly))
            .collect()
    }

    /// The product of all factors equals `x^n - 1`.
    pub fn product_is_exact(&self) -> bool {
        let pr = self.ring();
        let prod = pr.product(self.factors.iter().map(|f| &f.poly));
        prod == pr.xn_minus_one(self.n as usize)
    }

    /// Ω members are fixed by † and Λ pairs are swapped by it.
    pub fn daggers_are_consistent(&self) -> bool {
        let pr = self.ring();
        self.factors.iter().enumerate().all(|(i, f)| {
            let partner = &self.factors[f.partner];
            partner.partner == i
                && pr.conjugate_reciprocal_dagger(&f.poly).as_ref() == Ok(&partner.poly)
        })
    }

    /// Every factor is irreducible and has degree equal to its coset size.
    pub fn factors_are_irreducible(&self) -> bool {
        let pr = self.ring();
        self.factors
            .iter()
            .all(|f| f.poly.degree() == Some(f.coset.len()) && pr.is_irreducible(&f.poly))
    }
}

/// Explicit factorization through the minimal polynomials of powers of a
/// primitive `n`-th root of unity.
pub fn factor_xn_minus_1(q: u64, n: u64) -> Result<FactorizationReport> {
    let field = Gf::for_q(q)?;
    factor_over(&field, n)
}

/// [`factor_xn_minus_1`] for an already constructed `F_{q^2}`.
pub fn factor_over(field: &Gf, n: u64) -> Result<FactorizationReport> {
    let q = field.q();
    let cosets = coset_partition(q, n)?;
    let q2 = if n == 1 { 0 } else { field.size() % n };
    let m = mult_order(q2, n)?;
    if m > MAX_EXTENSION_DEGREE {
        return Err(Error::SizeLimitExceeded(format!(
            "splitting field of x^{n} - 1 has degree {m} over F_{}",
            field.size()
        )));
    }
    let (ext, alpha) = primitive_nth_root(field, n)?;
    let mut powers = Vec::with_capacity(n as usize);
    let mut acc = ext.one();
    for _ in 0..n {
        powers.push(acc.clone());
        acc = ext.mul(&acc, &alpha);
    }
    let big = PolyRing::new(ext.clone());
    let pr = PolyRing::new(field.clone());
    let q2_exp = field.size();
    let mut factors = Vec::with_capacity(cosets.len());
    for c in &cosets {
        let min_poly = big.product(
            c.members
                .iter()
                .map(|&j| big.linear(&powers[j as usize]))
                .collect::<Vec<_>>()
                .iter(),
        );
        let mut coeffs = Vec::with_capacity(c.len() + 1);
        for coef in min_poly.coeffs() {
            if ext.pow(coef, q2_exp) != *coef {
                return Err(Error::Internal(format!(
                    "minimal polynomial of coset {} has a coefficient outside F_{q2_exp}",
                    c.rep
                )));
            }
            let down = ext.descend(coef).ok_or_else(|| {
                Error::Internal(format!("coefficient of coset {} failed to descend", c.rep))
            })?;
            coeffs.push(down);
        }
        factors.push(IrreducibleFactor {
            coset: c.clone(),
            poly: pr.from_coeffs(coeffs),
            partner: 0,
        });
    }
    for i in 0..factors.len() {
        let pr_rep = partner_rep(&cosets, q, factors[i].coset.rep);
        factors[i].partner = factors
            .iter()
            .position(|f| f.coset.rep == pr_rep)
            .expect("partner coset exists");
    }
    let omega = factors.iter().enumerate().filter(|(i, f)| f.partner == *i).count() as u64;
    let lambda = (factors.len() as u64 - omega) / 2;
    let counts = CountsByMethod {
        explicit: OmegaLambda { omega, lambda },
        direct: count_direct(q, n)?,
        recursive: count_recursive(q, n)?,
    };
    Ok(FactorizationReport { q, n, field: field.clone(), factors, counts })
}

/// `|Ω| = Σ_{d|n} λ(q,d) φ(d)/ord_d(q^2)` and
/// `|Λ| = Σ_{d|n} (1-λ(q,d)) φ(d)/(2 ord_d(q^2))`.
pub fn count_direct(q: u64, n: u64) -> Result<OmegaLambda> {
    check_q(q)?;
    check_coprime(q, n)?;
    let mut omega = 0u64;
    let mut twice_lambda = 0u64;
    let fact = numtheory::factorize(n);
    for d in fact.divisors() {
        let cosets = numtheory::euler_phi(d) / mult_order(square_mod(q, d), d)?;
        if numtheory::lambda_predicate(q, d)? == 1 {
            omega += cosets;
        } else {
            twice_lambda += cosets;
        }
    }
    if twice_lambda % 2 != 0 {
        return Err(Error::Internal(format!("odd number of paired factors for q={q}, n={n}")));
    }
    Ok(OmegaLambda { omega, lambda: twice_lambda / 2 })
}

/// Number of cyclotomic cosets, `Σ_{d|n} φ(d)/ord_d(q^2)`.
fn coset_count(q: u64, n: u64) -> Result<u64> {
    let mut total = 0;
    for d in numtheory::divisors(n) {
        total += numtheory::euler_phi(d) / mult_order(square_mod(q, d), d)?;
    }
    Ok(total)
}

fn square_mod(q: u64, d: u64) -> u64 {
    numtheory::mul_mod(q % d, q % d, d)
}

/// `|Ω|` through the 2-part reduction and the odd-prime classification:
/// the power of two contributes `2^min(m, v2(q+1))`, odd primes `l` with
/// `v2(ord_l(q)) != 1` are dropped, and what is left is counted as a sum
/// over all its cosets, every one of which is self-conjugate-reciprocal.
pub fn count_recursive(q: u64, n: u64) -> Result<u64> {
    check_q(q)?;
    check_coprime(q, n)?;
    let (m, odd) = numtheory::split_two_power(n);
    let two_part = if m == 0 {
        1
    } else {
        let r = two_adic_valuation(q + 1);
        1u64 << m.min(r)
    };
    let mut kept = 1u64;
    for &(l, k) in &numtheory::factorize(odd).factors {
        if two_adic_valuation(mult_order(q % l, l)?) == 1 {
            kept *= l.pow(k);
        }
    }
    Ok(two_part * coset_count(q, kept)?)
}

fn check_odd(q: u64, n: u64) -> Result<()> {
    check_q(q)?;
    if n % 2 == 0 {
        return Err(Error::EvenInput(n));
    }
    check_coprime(q, n)
}

/// Every irreducible factor of `x^n - 1` is self-conjugate-reciprocal:
/// each prime `l | n` has `ord_l(q^2)` odd and `ord_l(q)` even.
pub fn all_scrim(q: u64, n: u64) -> Result<bool> {
    check_odd(q, n)?;
    for l in numtheory::factorize(n).primes() {
        let ord_q = mult_order(q % l, l)?;
        let ord_q2 = mult_order(square_mod(q, l), l)?;
        if ord_q2 % 2 == 0 || ord_q % 2 == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x - 1` is the only self-conjugate-reciprocal factor: each prime `l | n`
/// has `ord_l(q^2)` even or `ord_l(q)` odd.
pub fn only_trivial_scrim(q: u64, n: u64) -> Result<bool> {
    check_odd(q, n)?;
    for l in numtheory::factorize(n).primes() {
        let ord_q = mult_order(q % l, l)?;
        let ord_q2 = mult_order(square_mod(q, l), l)?;
        if !(ord_q2 % 2 == 0 || ord_q % 2 == 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(cs: &[Coset]) -> Vec<Vec<u64>> {
        cs.iter().map(|c| c.members.clone()).collect()
    }

    #[test]
    fn coset_examples() {
        assert_eq!(members(&coset_partition(2, 3).unwrap()), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            members(&coset_partition(3, 7).unwrap()),
            vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]
        );
        assert_eq!(
            members(&coset_partition(5, 7).unwrap()),
            vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]
        );
        assert_eq!(coset_partition(2, 4), Err(Error::NotCoprime { a: 2, n: 4 }));
    }

    #[test]
    fn coset_sizes_are_orders() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            for n in 1..80u64 {
                if gcd(q, n) != 1 {
                    continue;
                }
                let cs = coset_partition(q, n).unwrap();
                assert_eq!(cs.iter().map(Coset::len).sum::<usize>(), n as usize);
                for c in &cs {
                    let expect = if c.rep == 0 {
                        1
                    } else {
                        let d = n / gcd(n, c.rep);
                        mult_order(square_mod(q, d), d).unwrap()
                    };
                    assert_eq!(c.len() as u64, expect);
                    assert_eq!(c.members[0], c.rep);
                }
            }
        }
    }

    #[test]
    fn scrim_coset_examples() {
        let cs = coset_partition(3, 7).unwrap();
        assert!(is_scrim_coset(&cs[0], 3));
        assert!(is_scrim_coset(&cs[1], 3));
        let cs = coset_partition(2, 7).unwrap();
        assert!(!is_scrim_coset(&cs[1], 2));
        assert_eq!(partner_rep(&cs, 2, 1), 3);
    }

    #[test]
    fn factor_small_cases() {
        let r = factor_xn_minus_1(2, 3).unwrap();
        assert_eq!(r.omega().len(), 3);
        assert!(r.lambda_pairs().is_empty());
        let pr = r.ring();
        let rendered: Vec<String> = r.omega().iter().map(|f| pr.render(f)).collect();
        assert_eq!(rendered.len(), 3);
        assert!(rendered.contains(&"x + 1".to_string()));
        assert!(rendered.contains(&"x + (w)".to_string()));
        assert!(rendered.contains(&"x + (w+1)".to_string()));

        let r = factor_xn_minus_1(2, 7).unwrap();
        assert_eq!(r.omega().len(), 1);
        let pairs = r.lambda_pairs();
        assert_eq!(pairs.len(), 1);
        let (g, h) = pairs[0];
        let mut cubics = vec![pr.render(g), pr.render(h)];
        cubics.sort();
        assert_eq!(cubics, vec!["x^3 + x + 1", "x^3 + x^2 + 1"]);

        let r = factor_xn_minus_1(3, 7).unwrap();
        assert_eq!(r.counts.explicit, OmegaLambda { omega: 3, lambda: 0 });
    }

    #[test]
    fn reports_are_self_consistent() {
        for (q, n) in [(2, 15), (3, 20), (4, 21), (5, 24), (9, 10), (7, 16)] {
            let r = factor_xn_minus_1(q, n).unwrap();
            assert!(r.product_is_exact(), "q={q} n={n}");
            assert!(r.daggers_are_consistent(), "q={q} n={n}");
            assert!(r.factors_are_irreducible(), "q={q} n={n}");
            assert!(r.counts.agree(), "q={q} n={n}: {:?}", r.counts);
        }
    }

    #[test]
    fn direct_count_examples() {
        assert_eq!(count_direct(5, 161).unwrap().omega, 9);
        assert_eq!(count_direct(3, 133).unwrap().omega, 17);
        assert_eq!(count_direct(7, 1).unwrap(), OmegaLambda { omega: 1, lambda: 0 });
        assert_eq!(count_direct(6, 5), Err(Error::NotPrimePower(6)));
    }

    #[test]
    fn direct_count_splits_cosets() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for n in 1..150u64 {
                if gcd(q, n) == 1 {
                    let c = count_direct(q, n).unwrap();
                    assert_eq!(
                        c.omega + 2 * c.lambda,
                        coset_partition(q, n).unwrap().len() as u64
                    );
                }
            }
        }
    }

    #[test]
    fn recursive_count_examples() {
        let got: Vec<u64> = (0..5).map(|m| count_recursive(3, 1 << m).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 4, 4, 4]);
        assert_eq!(count_recursive(5, 161).unwrap(), 9);
        assert_eq!(count_recursive(3, 35).unwrap(), 3);
        assert_eq!(factor_xn_minus_1(3, 35).unwrap().counts.explicit.omega, 3);
    }

    #[test]
    fn dichotomy_examples() {
        assert!(all_scrim(3, 7).unwrap());
        assert!(only_trivial_scrim(2, 7).unwrap());
        assert!(all_scrim(5, 1).unwrap());
        assert!(only_trivial_scrim(5, 1).unwrap());
        assert_eq!(all_scrim(3, 8), Err(Error::EvenInput(8)));
        assert_eq!(only_trivial_scrim(3, 9), Err(Error::NotCoprime { a: 3, n: 9 }));
    }
}
