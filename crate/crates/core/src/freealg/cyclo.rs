//! Cyclotomic polynomials and exact arithmetic in ℚ(ζ_N).

use num::{BigRational, One, Zero};

/// Integer coefficients of Φ_N, lowest degree first, from Φ_N = Π_{d|N} (x^d − 1)^{μ(N/d)}.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut f = vec![0i64; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    // den has constant term ±1; normalise both to monic before dividing
    let mut q = exact_div(&monic(num), &monic(den));
    if q[q.len() - 1] < 0 {
        q.iter_mut().for_each(|c| *c = -*c);
    }
    q
}

fn monic(mut p: Vec<i64>) -> Vec<i64> {
    if p[p.len() - 1] < 0 {
        p.iter_mut().for_each(|c| *c = -*c);
    }
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let t = r[k + db];
        q[k] = t;
        if t != 0 {
            for j in 0..=db {
                r[k + j] -= t * b[j];
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Reduces Σ c_k ζ^k modulo Φ_N in place; afterwards only indices < φ(N) may be nonzero.
pub fn reduce_mod_cyclotomic(c: &mut [BigRational], phi_n: &[i64]) {
    let deg = phi_n.len() - 1;
    for k in (deg..c.len()).rev() {
        if c[k].is_zero() {
            continue;
        }
        let t = std::mem::take(&mut c[k]);
        for (j, &pj) in phi_n.iter().enumerate().take(deg) {
            if pj != 0 {
                c[k - deg + j] -= &t * BigRational::from_integer(pj.into());
            }
        }
    }
}

/// Element of ℚ(ζ_N) in the power basis 1, ζ, …, ζ^{φ(N)−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloNum {
    n: u64,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(n: u64) -> Self {
        CycloNum {
            n,
            coeffs: vec![BigRational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u64, q: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut c = vec![BigRational::zero(); n as usize];
        c[k] = BigRational::one();
        Self::from_powers(n, c)
    }

    /// From coefficients on ζ^0 … ζ^{len−1}.
    pub fn from_powers(n: u64, mut c: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        if c.len() < deg {
            c.resize(deg, BigRational::zero());
        }
        reduce_mod_cyclotomic(&mut c, &phi);
        c.truncate(deg);
        CycloNum { n, coeffs: c }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        CycloNum {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let d = self.coeffs.len();
        let mut c = vec![BigRational::zero(); 2 * d.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Self::from_powers(self.n, c)
    }

    /// Multiplicative inverse through the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<BigRational> = cyclotomic_poly(self.n)
            .into_iter()
            .map(|x| BigRational::from_integer(x.into()))
            .collect();
        let (g, s) = ext_gcd(trim(self.coeffs.clone()), trim(phi));
        // Φ_N is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let scale = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|x| x * &scale).collect();
        Some(Self::from_powers(self.n, s))
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(q.len() + b.len());
    let mut r = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= x * y;
        }
    }
    trim(r)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![BigRational::zero()], trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let t = &r[k + db] / &lead;
        if !t.is_zero() {
            for j in 0..=db {
                r[k + j] -= &t * &b[j];
            }
        }
        q[k] = t;
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

/// Returns (g, s) with s·a ≡ g modulo b.
fn ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

/// Rank of a matrix over ℚ(ζ_N) by division-free elimination; inverses in
/// large cyclotomic fields are far more expensive than products.
pub fn cyclo_rank(rows: &[Vec<CycloNum>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pv = &pivot_row[col];
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = x.mul(pv).sub(&f.mul(y));
            }
        }
        rank += 1;
    }
    rank
}

/// Nonzero rows of a reduced row-echelon form.
pub fn row_echelon(mut m: Vec<Vec<CycloNum>>) -> Vec<Vec<CycloNum>> {
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        m[rank] = m[rank].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}
