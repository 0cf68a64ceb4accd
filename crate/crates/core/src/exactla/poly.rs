use std::fmt;

use rand::Rng;

use super::field::Fp;
use super::matrix::FpMatrix;

/// Polynomial over 𝔽_p, coefficients stored from the constant term upwards
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    field: Fp,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(field: Fp, coeffs: Vec<u64>) -> Self {
        let mut p = FpPoly { field, coeffs: coeffs.into_iter().map(|c| field.reduce(c)).collect() };
        p.normalize();
        p
    }

    pub fn from_i64(field: Fp, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Fp) -> Self {
        FpPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Fp) -> Self {
        Self::new(field, vec![1])
    }

    pub fn x(field: Fp) -> Self {
        Self::new(field, vec![0, 1])
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(*self.coeffs.get(i).unwrap_or(&0), *other.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(*self.coeffs.get(i).unwrap_or(&0), *other.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Self::new(f, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let f = self.field;
        let mut rem = self.coeffs.clone();
        let dd = divisor.deg_or_zero();
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let inv_lead = f.inv(divisor.leading());
        let mut quot = vec![0; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.of_usize(i)))
            .collect();
        Self::new(f, c)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.field).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &FpMatrix) -> FpMatrix {
        let n = m.rows();
        let f = self.field;
        let mut acc = FpMatrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&FpMatrix::identity(f, n).scale(c));
        }
        acc
    }

    /// Companion matrix of a monic polynomial of positive degree.
    pub fn companion(&self) -> FpMatrix {
        let f = self.field;
        let g = self.monic();
        let n = g.deg_or_zero();
        let mut m = FpMatrix::zeros(f, n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1;
        }
        for i in 0..n {
            m[(i, n - 1)] = f.neg(g.coeffs[i]);
        }
        m
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.field.p())
    }
}

/// Minimal polynomial of a square matrix, found as the first linear
/// dependency among `I, M, M^2, ...`.
pub fn minpoly(m: &FpMatrix) -> FpPoly {
    assert!(m.is_square(), "minpoly of a non-square matrix");
    let f = m.field();
    let n = m.rows();
    let mut powers: Vec<Vec<u64>> = vec![FpMatrix::identity(f, n).data().to_vec()];
    let mut current = FpMatrix::identity(f, n);
    loop {
        current = current.mul(m);
        powers.push(current.data().to_vec());
        let k = powers.len() - 1;
        let stacked = FpMatrix::from_columns(f, n * n, &powers);
        let ker = stacked.kernel_basis();
        if ker.cols() > 0 {
            // Earlier powers were independent, so the kernel is a line.
            let v = ker.column(0);
            debug_assert_ne!(v[k], 0);
            return FpPoly::new(f, v).monic();
        }
    }
}

/// Factors a nonzero polynomial into monic irreducibles with multiplicities.
///
/// Squarefree decomposition, then distinct-degree, then Cantor–Zassenhaus
/// equal-degree splitting driven by `rng`. Output is sorted by degree and
/// coefficients, so it does not depend on the random choices.
pub fn factor<R: Rng>(poly: &FpPoly, rng: &mut R) -> Vec<(FpPoly, usize)> {
    assert!(!poly.is_zero(), "factoring the zero polynomial");
    let mut out = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&poly.monic()) {
        for (part, deg) in distinct_degree(&sqf) {
            for irr in equal_degree(&part, deg, rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs.cmp(&b.coeffs)));
    out
}

fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = f.field;
    let p = field.p() as usize;
    let mut out = Vec::new();
    if f.deg_or_zero() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if fac.deg_or_zero() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power; over 𝔽_p the root just thins out the exponents.
        let root = FpPoly::new(field, c.coeffs.iter().step_by(p).copied().collect());
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = f.field;
    let mut out = Vec::new();
    let mut g = f.clone();
    let x = FpPoly::x(field);
    let mut h = x.rem(&g);
    let mut i = 1;
    while g.deg_or_zero() >= 2 * i {
        h = h.pow_mod(field.p(), &g);
        let d = g.gcd(&h.sub(&x));
        if !d.is_one() {
            g = g.exact_div(&d);
            h = h.rem(&g);
            out.push((d, i));
        }
        i += 1;
    }
    if g.deg_or_zero() > 0 {
        let d = g.deg_or_zero();
        out.push((g, d));
    }
    out
}

fn equal_degree<R: Rng>(f: &FpPoly, deg: usize, rng: &mut R) -> Vec<FpPoly> {
    let n = f.deg_or_zero();
    if n == deg {
        return vec![f.monic()];
    }
    let field = f.field;
    loop {
        let a = FpPoly::new(field, (0..n).map(|_| rng.random_range(0..field.p())).collect());
        if a.deg_or_zero() == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // Trace to 𝔽_2: a + a^2 + ... + a^(2^(deg-1)).
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..deg {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^deg - 1)/2) = (a · a^p ⋯ a^(p^(deg-1)))^((p-1)/2).
            let mut frob = a.rem(f);
            let mut norm = frob.clone();
            for _ in 1..deg {
                frob = frob.pow_mod(field.p(), f);
                norm = norm.mul(&frob).rem(f);
            }
            norm.pow_mod((field.p() - 1) / 2, f).sub(&FpPoly::one(field))
        };
        let g = f.gcd(&b);
        let gd = g.deg_or_zero();
        if gd > 0 && gd < n {
            let mut parts = equal_degree(&g, deg, rng);
            parts.extend(equal_degree(&f.exact_div(&g), deg, rng));
            return parts;
        }
    }
}
