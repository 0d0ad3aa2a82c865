//! Univariate polynomial arithmetic and factorization over GF(p),
//! used to split endomorphisms via coprime factors of minimal
//! polynomials (Fitting-style idempotent construction).

use rand::Rng;

use crate::linalg::{rank, Mat, PrimeField};

/// Coefficients low-to-high, normalized (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<u64>,
    pub field: PrimeField,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u64>, field: PrimeField) -> Self {
        for c in &mut coeffs {
            *c %= field.modulus();
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs, field }
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly { coeffs: vec![], field }
    }

    pub fn one(field: PrimeField) -> Self {
        Poly { coeffs: vec![1], field }
    }

    pub fn x(field: PrimeField) -> Self {
        Poly { coeffs: vec![0, 1], field }
    }

    pub fn constant(c: u64, field: PrimeField) -> Self {
        Poly::new(vec![c], field)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0 by convention of callers checking is_zero first.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Poly::new(coeffs, f)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                f.sub(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Poly::new(coeffs, f)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(coeffs, f)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c % f.modulus())).collect(), f)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let mut quo = vec![0u64; rem.len() - d.coeffs.len() + 1];
        let dl_inv = f.inv(d.lead());
        for i in (0..quo.len()).rev() {
            let top = rem[i + d.coeffs.len() - 1];
            if top == 0 {
                continue;
            }
            let q = f.mul(top, dl_inv);
            quo[i] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(q, dc));
            }
        }
        (Poly::new(quo, f), Poly::new(rem, f))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s·self + t·other = g (monic).
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc_inv = f.inv(r0.lead());
        (r0.scale(lc_inv), s0.scale(lc_inv), t0.scale(lc_inv))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i as u64) % f.modulus()))
            .collect();
        Poly::new(coeffs, f)
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let f = self.field;
        let mut base = self.rem(m);
        let mut acc = Poly::one(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let f = m.field;
        let n = m.rows;
        let mut acc = Mat::zero(n, n, f);
        let mut pw = Mat::identity(n, f);
        for &c in &self.coeffs {
            if c != 0 {
                acc = acc.add(&pw.scale(c));
            }
            pw = m.mul(&pw);
        }
        acc
    }
}

/// Minimal polynomial of a square matrix: smallest monic μ with μ(T) = 0,
/// found by incremental rank on vectorized powers.
pub fn min_poly(t: &Mat) -> Poly {
    assert_eq!(t.rows, t.cols);
    let f = t.field;
    let n = t.rows;
    if n == 0 {
        return Poly::one(f);
    }
    let mut powers: Vec<Mat> = vec![Mat::identity(n, f)];
    loop {
        // check whether I, T, ..., T^{d-1}, T^d are dependent
        let next = t.mul(powers.last().unwrap());
        let mut cols: Vec<Vec<u64>> = powers.iter().map(Mat::vectorize).collect();
        let dep_rank = {
            let m = Mat::from_rows(&cols, f).transpose();
            rank(&m)
        };
        cols.push(next.vectorize());
        let full = Mat::from_rows(&cols, f).transpose();
        if rank(&full) == dep_rank {
            // T^d ∈ span of lower powers: solve for coefficients
            let basis = Mat::from_rows(&powers.iter().map(Mat::vectorize).collect::<Vec<_>>(), f)
                .transpose();
            let rhs = next.vectorize();
            let sol = crate::linalg::solve(&basis, &rhs)
                .expect("shapes agree")
                .expect("dependence established");
            // μ(t) = t^d − Σ sol_i t^i
            let mut coeffs = sol.iter().map(|&c| f.neg(c)).collect::<Vec<_>>();
            coeffs.push(1);
            return Poly::new(coeffs, f);
        }
        powers.push(next);
    }
}

/// Squarefree part, handling the characteristic-p derivative-zero case
/// (over the prime field, p-th roots of coefficients are the coefficients).
pub fn squarefree_part(mu: &Poly) -> Poly {
    let f = mu.field;
    let p = f.modulus() as usize;
    if mu.deg() == 0 {
        return Poly::one(f);
    }
    let d = mu.derivative();
    if d.is_zero() {
        // μ = h(x^p); take p-th root
        let coeffs: Vec<u64> = mu.coeffs.iter().step_by(p).copied().collect();
        return squarefree_part(&Poly::new(coeffs, f));
    }
    let g = mu.gcd(&d);
    let sf = mu.divrem(&g).0.monic();
    if g.deg() == 0 {
        sf
    } else {
        // residual factors may hide inside g
        let rest = squarefree_part(&g);
        let combined = sf.mul(&rest);
        let red = combined.divrem(&sf.gcd(&rest)).0;
        red.monic()
    }
}

/// Full factorization into monic irreducibles with multiplicities.
/// Deterministic distinct-degree stage; equal-degree splitting uses the
/// supplied RNG (Cantor–Zassenhaus), so results are seed-reproducible.
pub fn factor<R: Rng>(mu: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
    let f = mu.field;
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let mut irreducibles: Vec<Poly> = Vec::new();
    let sf = squarefree_part(mu);
    // distinct-degree on the squarefree part
    let mut rem = sf.clone();
    let mut d = 1usize;
    let mut frob = Poly::x(f); // x^{p^k} mod rem, maintained incrementally
    while rem.deg() >= 1 {
        if d * 2 > rem.deg() {
            irreducibles.push(rem.monic());
            break;
        }
        frob = frob.pow_mod(f.modulus() as u128, &rem);
        let diff = frob.sub(&Poly::x(f));
        let g = rem.gcd(&diff);
        if g.deg() >= 1 {
            split_equal_degree(&g, d, rng, &mut irreducibles);
            rem = rem.divrem(&g).0.monic();
            frob = frob.rem(&rem);
        }
        d += 1;
    }
    for irr in irreducibles {
        let mut m = 0usize;
        let mut cur = mu.clone();
        loop {
            let (q, r) = cur.divrem(&irr);
            if !r.is_zero() {
                break;
            }
            m += 1;
            cur = q;
        }
        out.push((irr, m));
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.coeffs).cmp(&(b.0.deg(), &b.0.coeffs)));
    out
}

fn split_equal_degree<R: Rng>(g: &Poly, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    let f = g.field;
    if g.deg() == d {
        out.push(g.monic());
        return;
    }
    let p = f.modulus();
    loop {
        let deg = g.deg().saturating_sub(1).max(1);
        let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
        let a = Poly::new(coeffs, f);
        if a.deg() < 1 && a.coeffs.len() <= 1 {
            continue;
        }
        let candidate = if p == 2 {
            // trace map: a + a^2 + a^4 + ... + a^{2^{d-1}} mod g
            let mut acc = Poly::zero(f);
            let mut cur = a.rem(g);
            for _ in 0..d {
                acc = acc.add(&cur).rem(g);
                cur = cur.mul(&cur).rem(g);
            }
            acc
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            a.pow_mod(e, g).sub(&Poly::one(f))
        };
        let h = g.gcd(&candidate);
        if h.deg() >= 1 && h.deg() < g.deg() {
            split_equal_degree(&h, d, rng, out);
            split_equal_degree(&g.divrem(&h).0.monic(), d, rng, out);
            return;
        }
    }
}

/// Write μ = f1 · f2 with coprime monic factors (f1 a prime power),
/// or None when μ is a prime power itself. The returned pair comes with
/// Bezout data (s, t) with s·f1 + t·f2 = 1.
pub fn coprime_split<R: Rng>(mu: &Poly, rng: &mut R) -> Option<(Poly, Poly, Poly, Poly)> {
    let factors = factor(mu, rng);
    if factors.len() < 2 {
        return None;
    }
    let (irr, m) = &factors[0];
    let mut f1 = Poly::one(mu.field);
    for _ in 0..*m {
        f1 = f1.mul(irr);
    }
    let f2 = mu.divrem(&f1).0.monic();
    let (g, s, t) = f1.xgcd(&f2);
    debug_assert_eq!(g, Poly::one(mu.field));
    Some((f1, f2, s, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn divrem_roundtrip() {
        let f = gf(5);
        let a = Poly::new(vec![1, 2, 3, 4], f);
        let b = Poly::new(vec![2, 1], f);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg() || r.is_zero());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let f = gf(3);
        let a = Poly::new(vec![1, 1], f); // x + 1
        let b = Poly::new(vec![2, 1], f); // x + 2
        assert_eq!(a.gcd(&b), Poly::one(f));
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, Poly::one(f));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), Poly::one(f));
    }

    #[test]
    fn min_poly_of_diag() {
        // diag(1, 2) over GF(5): μ = (t−1)(t−2) = t² − 3t + 2
        let f = gf(5);
        let m = Mat::from_rows(&[vec![1, 0], vec![0, 2]], f);
        let mu = min_poly(&m);
        assert_eq!(mu, Poly::new(vec![2, 2, 1], f)); // 2 − 3t + t² ≡ 2 + 2t + t²
        assert!(mu.eval_mat(&m).is_zero());
    }

    #[test]
    fn min_poly_of_nilpotent() {
        let f = gf(2);
        let m = Mat::from_rows(&[vec![0, 1], vec![0, 0]], f);
        assert_eq!(min_poly(&m), Poly::new(vec![0, 0, 1], f)); // t²
    }

    #[test]
    fn factor_splits_distinct_roots() {
        let f = gf(5);
        let mu = Poly::new(vec![2, 2, 1], f); // (t−1)(t−2)
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fac = factor(&mu, &mut rng);
        assert_eq!(fac.len(), 2);
        let prod = fac
            .iter()
            .fold(Poly::one(f), |acc, (p, m)| {
                let mut a = acc;
                for _ in 0..*m {
                    a = a.mul(p);
                }
                a
            });
        assert_eq!(prod, mu);
    }

    #[test]
    fn factor_handles_char_p_powers() {
        // t^4 over GF(2): derivative is zero; squarefree part must be t
        let f = gf(2);
        let mu = Poly::new(vec![0, 0, 0, 0, 1], f);
        assert_eq!(squarefree_part(&mu), Poly::x(f));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fac = factor(&mu, &mut rng);
        assert_eq!(fac, vec![(Poly::x(f), 4)]);
    }

    #[test]
    fn factor_irreducible_quadratic_gf2() {
        // t² + t + 1 is irreducible over GF(2)
        let f = gf(2);
        let mu = Poly::new(vec![1, 1, 1], f);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fac = factor(&mu, &mut rng);
        assert_eq!(fac, vec![(mu.clone(), 1)]);
        assert!(coprime_split(&mu, &mut rng).is_none());
    }

    #[test]
    fn coprime_split_gives_bezout() {
        // t²(t+1) over GF(3)
        let f = gf(3);
        let mu = Poly::new(vec![0, 0, 1, 1], f);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (f1, f2, s, t) = coprime_split(&mu, &mut rng).unwrap();
        assert_eq!(f1.mul(&f2), mu.monic());
        assert_eq!(s.mul(&f1).add(&t.mul(&f2)), Poly::one(f));
    }

    #[test]
    fn factor_mixed_degrees_gf2() {
        // t(t+1)(t²+t+1) = t^4 + t over GF(2)
        let f = gf(2);
        let mu = Poly::new(vec![0, 1, 0, 0, 1], f);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fac = factor(&mu, &mut rng);
        assert_eq!(fac.len(), 3);
        assert_eq!(fac.iter().map(|(p, m)| p.deg() * m).sum::<usize>(), 4);
    }
}
