use rand::Rng;

use super::ring::{ExactDiv, Field, Ring};

/// Residue in `[0, p)`; only meaningful together with its [`PrimeField`].
pub type Residue = u64;

/// The prime field `F_p` for a single-word prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics if `p` is not prime.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        assert!(p < (1 << 63));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> Residue {
        x % self.p
    }

    #[inline]
    pub fn from_i128(&self, x: i128) -> Residue {
        x.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn addm(&self, a: Residue, b: Residue) -> Residue {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn subm(&self, a: Residue, b: Residue) -> Residue {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mulm(&self, a: Residue, b: Residue) -> Residue {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn invm(&self, a: Residue) -> Option<Residue> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.from_i128(t0))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Residue {
        rng.gen_range(0..self.p)
    }
}

impl Ring for PrimeField {
    type Elem = Residue;

    fn zero(&self) -> Residue {
        0
    }
    fn one(&self) -> Residue {
        1
    }
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        self.addm(*a, *b)
    }
    fn neg(&self, a: &Residue) -> Residue {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        self.subm(*a, *b)
    }
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.mulm(*a, *b)
    }
    fn is_zero(&self, a: &Residue) -> bool {
        *a == 0
    }
    fn embed_i64(&self, n: i64) -> Residue {
        self.from_i128(n as i128)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &Residue) -> Option<Residue> {
        self.invm(*a)
    }
}

impl ExactDiv for PrimeField {
    fn exact_div(&self, a: &Residue, b: &Residue) -> Option<Residue> {
        self.div(a, b)
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    base = acc as u64;
    base
}

// Miller-Rabin witnesses; this fixed set is exact for every n < 3.3e24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in MR_BASES.iter() {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in MR_BASES.iter() {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniformly random odd candidates in `[2^60, 2^61)` until one is prime.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 60)..(1u64 << 61)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}
