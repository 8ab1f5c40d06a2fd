//! Systematic block codes over `ell`-ary symbols.
//!
//! Symbols here are 0-based digits `0..ell`. Callers holding 1-based
//! duration indices subtract one first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait EccCode: Send + Sync + std::fmt::Debug {
    fn name(&self) -> &'static str;
    /// Symbol alphabet size `ell`.
    fn alphabet(&self) -> usize;
    fn payload_len(&self) -> usize;
    /// Number of `ell`-ary parity digits produced by [`encode`](Self::encode).
    fn parity_len(&self) -> usize;
    /// Payload symbol errors that [`decode`](Self::decode) always corrects.
    fn radius(&self) -> usize;
    fn encode(&self, payload: &[u32]) -> Result<Vec<u32>>;
    /// Corrected payload, or `Unrecoverable` if the errors exceed what the code can fix.
    fn decode(&self, payload: &[u32], parity: &[u32]) -> Result<Vec<u32>>;
}

/// Which code to build for a given payload length and radius.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EccKind {
    #[default]
    ReedSolomon,
    Repetition,
}

impl EccKind {
    pub fn build(self, ell: usize, payload_len: usize, radius: usize) -> Result<Box<dyn EccCode>> {
        Ok(match self {
            EccKind::ReedSolomon => Box::new(ReedSolomon::new(ell, payload_len, radius)?),
            EccKind::Repetition => Box::new(Repetition::new(ell, payload_len, radius)?),
        })
    }
}

impl std::str::FromStr for EccKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reed-solomon" | "rs" => Ok(EccKind::ReedSolomon),
            "repetition" => Ok(EccKind::Repetition),
            _ => Err(Error::param("ecc", s, "reed-solomon or repetition")),
        }
    }
}

fn check_symbols(symbols: &[u32], ell: usize, len: usize, what: &str) -> Result<()> {
    if symbols.len() != len {
        return Err(Error::InvalidSchedule(format!(
            "{what} has {} symbols, expected {len}",
            symbols.len()
        )));
    }
    if let Some(&s) = symbols.iter().find(|&&s| s as usize >= ell) {
        return Err(Error::InvalidSchedule(format!(
            "{what} symbol {s} outside 0..{ell}"
        )));
    }
    Ok(())
}

/// Arithmetic modulo a prime below `2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct PrimeField {
    p: u64,
}

impl PrimeField {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    fn primitive_root(self) -> u64 {
        let mut factors = Vec::new();
        let mut m = self.p - 1;
        let mut f = 2;
        while f * f <= m {
            if m.is_multiple_of(f) {
                factors.push(f);
                while m.is_multiple_of(f) {
                    m /= f;
                }
            }
            f += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (self.p - 1) / f) != 1))
            .unwrap_or(1)
    }

    /// Polynomial with coefficients lowest degree first.
    fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Reed-Solomon code over the smallest prime field that holds both the
/// `ell`-ary payload symbols and a codeword of `payload_len + 2 radius`
/// symbols. Each field parity symbol is spelled as a fixed number of
/// `ell`-ary digits, most significant first.
#[derive(Clone, Debug)]
pub struct ReedSolomon {
    ell: usize,
    payload_len: usize,
    radius: usize,
    field: PrimeField,
    alpha: u64,
    /// Monic generator `prod_{j=1}^{2e} (x - alpha^j)`, lowest degree first.
    generator: Vec<u64>,
    digits_per_symbol: usize,
}

impl ReedSolomon {
    pub fn new(ell: usize, payload_len: usize, radius: usize) -> Result<Self> {
        if ell < 2 {
            return Err(Error::param("ell", ell, "ell >= 2"));
        }
        let n = payload_len + 2 * radius;
        let mut p = ell.max(n + 1).max(2) as u64;
        while !is_prime(p) {
            p += 1;
        }
        if p >= 1 << 32 {
            return Err(Error::param(
                "payload length",
                payload_len,
                "codeword shorter than 2^32",
            ));
        }
        let field = PrimeField { p };
        let alpha = field.primitive_root();
        let mut generator = vec![1u64];
        for j in 1..=2 * radius as u64 {
            let root = field.pow(alpha, j);
            let mut next = vec![0u64; generator.len() + 1];
            for (i, &c) in generator.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], c);
                next[i] = field.sub(next[i], field.mul(c, root));
            }
            generator = next;
        }
        let mut digits_per_symbol = 1;
        let mut reach = ell as u64;
        while reach < p {
            reach = reach.saturating_mul(ell as u64);
            digits_per_symbol += 1;
        }
        Ok(ReedSolomon {
            ell,
            payload_len,
            radius,
            field,
            alpha,
            generator,
            digits_per_symbol,
        })
    }

    pub fn field_size(&self) -> u64 {
        self.field.p
    }

    fn codeword_len(&self) -> usize {
        self.payload_len + 2 * self.radius
    }

    /// Field parity symbols: `-(m(x) x^{2e} mod g(x))`, highest degree first.
    fn field_parity(&self, payload: &[u32]) -> Vec<u64> {
        let f = self.field;
        let nsym = 2 * self.radius;
        if nsym == 0 {
            return Vec::new();
        }
        let mut rem = vec![0u64; nsym];
        // LFSR division; rem[0] is the highest-degree remainder coefficient
        for &m in payload {
            let feedback = f.add(m as u64, rem[0]);
            rem.rotate_left(1);
            rem[nsym - 1] = 0;
            for (j, r) in rem.iter_mut().enumerate() {
                // generator coefficient of x^{nsym-1-j}
                *r = f.sub(*r, f.mul(feedback, self.generator[nsym - 1 - j]));
            }
        }
        rem.into_iter().map(|r| f.sub(0, r)).collect()
    }

    fn spell(&self, symbols: &[u64]) -> Vec<u32> {
        let ell = self.ell as u64;
        let mut out = Vec::with_capacity(symbols.len() * self.digits_per_symbol);
        for &v in symbols {
            let mut digits = vec![0u32; self.digits_per_symbol];
            let mut v = v;
            for d in digits.iter_mut().rev() {
                *d = (v % ell) as u32;
                v /= ell;
            }
            out.extend(digits);
        }
        out
    }

    /// A spelling outside the field is already a symbol error; reducing it
    /// lets the decoder treat it like any other.
    fn unspell(&self, digits: &[u32]) -> Vec<u64> {
        digits
            .chunks(self.digits_per_symbol)
            .map(|c| {
                c.iter()
                    .fold(0u64, |acc, &d| acc * self.ell as u64 + d as u64)
                    % self.field.p
            })
            .collect()
    }
}

/// Connection polynomial `Lambda(x)`, lowest degree first.
fn berlekamp_massey(f: PrimeField, syndromes: &[u64]) -> Vec<u64> {
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last = 1u64;
    for n in 0..syndromes.len() {
        let mut d = syndromes[n];
        for i in 1..=l.min(c.len() - 1) {
            d = f.add(d, f.mul(c[i], syndromes[n - i]));
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = f.mul(d, f.inv(last));
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + m] = f.sub(c[i + m], f.mul(coef, bi));
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.truncate(l + 1);
    c
}

impl EccCode for ReedSolomon {
    fn name(&self) -> &'static str {
        "reed-solomon"
    }

    fn alphabet(&self) -> usize {
        self.ell
    }

    fn payload_len(&self) -> usize {
        self.payload_len
    }

    fn parity_len(&self) -> usize {
        2 * self.radius * self.digits_per_symbol
    }

    fn radius(&self) -> usize {
        self.radius
    }

    fn encode(&self, payload: &[u32]) -> Result<Vec<u32>> {
        check_symbols(payload, self.ell, self.payload_len, "payload")?;
        Ok(self.spell(&self.field_parity(payload)))
    }

    fn decode(&self, payload: &[u32], parity: &[u32]) -> Result<Vec<u32>> {
        check_symbols(payload, self.ell, self.payload_len, "payload")?;
        check_symbols(parity, self.ell, self.parity_len(), "parity")?;
        if self.radius == 0 {
            return Ok(payload.to_vec());
        }
        let f = self.field;
        let n = self.codeword_len();
        // word[j] is the coefficient of x^{n-1-j}
        let mut word: Vec<u64> = payload.iter().map(|&s| s as u64).collect();
        word.extend(self.unspell(parity));
        let syndromes_of = |word: &[u64]| -> Vec<u64> {
            (1..=2 * self.radius as u64)
                .map(|j| {
                    let x = f.pow(self.alpha, j);
                    word.iter().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
                })
                .collect()
        };
        let syndromes = syndromes_of(&word);
        if syndromes.iter().all(|&s| s == 0) {
            return Ok(payload.to_vec());
        }

        let lambda = berlekamp_massey(f, &syndromes);
        let errors = lambda.len() - 1;
        if errors > self.radius {
            return Err(Error::Unrecoverable(format!(
                "more than {} symbol errors in a codeword of {n}",
                self.radius
            )));
        }
        let mut omega = vec![0u64; 2 * self.radius];
        for (i, &s) in syndromes.iter().enumerate() {
            for (k, &l) in lambda.iter().enumerate() {
                if i + k < omega.len() {
                    omega[i + k] = f.add(omega[i + k], f.mul(s, l));
                }
            }
        }
        let derivative: Vec<u64> = lambda
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &l)| f.mul(k as u64 % f.p, l))
            .collect();

        let mut found = 0;
        for (j, w) in word.iter_mut().enumerate() {
            let x_inv = f.inv(f.pow(self.alpha, (n - 1 - j) as u64));
            if f.eval(&lambda, x_inv) != 0 {
                continue;
            }
            let denom = f.eval(&derivative, x_inv);
            if denom == 0 {
                return Err(Error::Unrecoverable("repeated error locator root".into()));
            }
            let magnitude = f.sub(0, f.mul(f.eval(&omega, x_inv), f.inv(denom)));
            *w = f.sub(*w, magnitude);
            found += 1;
        }
        if found != errors || syndromes_of(&word).iter().any(|&s| s != 0) {
            return Err(Error::Unrecoverable(format!(
                "error locator of degree {errors} has {found} roots in the codeword"
            )));
        }
        word.truncate(self.payload_len);
        if let Some(&s) = word.iter().find(|&&s| s as usize >= self.ell) {
            return Err(Error::Unrecoverable(format!(
                "corrected symbol {s} outside 0..{}",
                self.ell
            )));
        }
        Ok(word.into_iter().map(|s| s as u32).collect())
    }
}

/// Sends `2 radius` extra copies of the payload and takes a per-position
/// majority, so up to `radius` errors in any one position are fixed.
#[derive(Clone, Debug)]
pub struct Repetition {
    ell: usize,
    payload_len: usize,
    radius: usize,
}

impl Repetition {
    pub fn new(ell: usize, payload_len: usize, radius: usize) -> Result<Self> {
        if ell < 2 {
            return Err(Error::param("ell", ell, "ell >= 2"));
        }
        Ok(Repetition {
            ell,
            payload_len,
            radius,
        })
    }
}

impl EccCode for Repetition {
    fn name(&self) -> &'static str {
        "repetition"
    }

    fn alphabet(&self) -> usize {
        self.ell
    }

    fn payload_len(&self) -> usize {
        self.payload_len
    }

    fn parity_len(&self) -> usize {
        2 * self.radius * self.payload_len
    }

    fn radius(&self) -> usize {
        self.radius
    }

    fn encode(&self, payload: &[u32]) -> Result<Vec<u32>> {
        check_symbols(payload, self.ell, self.payload_len, "payload")?;
        Ok(payload.repeat(2 * self.radius))
    }

    fn decode(&self, payload: &[u32], parity: &[u32]) -> Result<Vec<u32>> {
        check_symbols(payload, self.ell, self.payload_len, "payload")?;
        check_symbols(parity, self.ell, self.parity_len(), "parity")?;
        let copies = 2 * self.radius + 1;
        (0..self.payload_len)
            .map(|j| {
                let mut votes = vec![0usize; self.ell];
                votes[payload[j] as usize] += 1;
                for c in 0..copies - 1 {
                    votes[parity[c * self.payload_len + j] as usize] += 1;
                }
                let (best, &n) = votes
                    .iter()
                    .enumerate()
                    .max_by_key(|&(s, &n)| (n, std::cmp::Reverse(s)))
                    .unwrap();
                if 2 * n > copies {
                    Ok(best as u32)
                } else {
                    Err(Error::Unrecoverable(format!("no majority at position {j}")))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_word(rng: &mut ChaCha8Rng, ell: usize, len: usize) -> Vec<u32> {
        (0..len).map(|_| rng.random_range(0..ell as u32)).collect()
    }

    fn corrupt(rng: &mut ChaCha8Rng, word: &mut [u32], ell: usize, count: usize) {
        let mut positions: Vec<usize> = (0..word.len()).collect();
        for k in 0..count {
            let j = rng.random_range(k..positions.len());
            positions.swap(k, j);
            let p = positions[k];
            word[p] = (word[p] + rng.random_range(1..ell as u32)) % ell as u32;
        }
    }

    #[test]
    fn field_choice() {
        let rs = ReedSolomon::new(4, 10, 3).unwrap();
        assert_eq!(rs.field_size(), 17);
        assert_eq!(rs.digits_per_symbol, 3);
        assert_eq!(rs.parity_len(), 18);
        let rs = ReedSolomon::new(2, 500, 77).unwrap();
        assert_eq!(rs.field_size(), 659);
        assert_eq!(rs.digits_per_symbol, 10);
    }

    #[test]
    fn primitive_roots() {
        for p in [3u64, 5, 7, 17, 257, 659] {
            let f = PrimeField { p };
            let g = f.primitive_root();
            let order = (1..p).find(|&k| f.pow(g, k) == 1).unwrap();
            assert_eq!(order, p - 1, "p = {p}");
        }
    }

    #[test]
    fn clean_codeword_has_zero_syndromes() {
        let rs = ReedSolomon::new(4, 20, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let payload = random_word(&mut rng, 4, 20);
        let parity = rs.encode(&payload).unwrap();
        assert_eq!(rs.decode(&payload, &parity).unwrap(), payload);
    }

    #[test]
    fn reed_solomon_corrects_up_to_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(ell, len, radius) in &[
            (2usize, 40usize, 5usize),
            (4, 100, 12),
            (10, 30, 3),
            (3, 1, 1),
        ] {
            let rs = ReedSolomon::new(ell, len, radius).unwrap();
            for errors in 0..=radius {
                for _ in 0..20 {
                    let payload = random_word(&mut rng, ell, len);
                    let parity = rs.encode(&payload).unwrap();
                    let mut received = payload.clone();
                    corrupt(&mut rng, &mut received, ell, errors.min(len));
                    assert_eq!(
                        rs.decode(&received, &parity).unwrap(),
                        payload,
                        "ell {ell} errors {errors}"
                    );
                }
            }
        }
    }

    #[test]
    fn reed_solomon_parity_errors_count_too() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rs = ReedSolomon::new(4, 30, 4).unwrap();
        let payload = random_word(&mut rng, 4, 30);
        let mut parity = rs.encode(&payload).unwrap();
        let mut received = payload.clone();
        corrupt(&mut rng, &mut received, 4, 2);
        // one field symbol of parity spoiled in a single digit
        parity[0] = (parity[0] + 1) % 2;
        assert_eq!(rs.decode(&received, &parity).unwrap(), payload);
    }

    #[test]
    fn reed_solomon_reports_overload() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rs = ReedSolomon::new(4, 60, 2).unwrap();
        let mut failures = 0;
        for _ in 0..50 {
            let payload = random_word(&mut rng, 4, 60);
            let parity = rs.encode(&payload).unwrap();
            let mut received = payload.clone();
            corrupt(&mut rng, &mut received, 4, 10);
            match rs.decode(&received, &parity) {
                Err(Error::Unrecoverable(_)) => failures += 1,
                Ok(w) => assert_ne!(w, payload),
                Err(e) => panic!("{e}"),
            }
        }
        assert!(failures > 40);
    }

    #[test]
    fn zero_radius_is_identity() {
        let rs = ReedSolomon::new(3, 5, 0).unwrap();
        assert!(rs.encode(&[0, 1, 2, 1, 0]).unwrap().is_empty());
        assert_eq!(
            rs.decode(&[0, 1, 2, 1, 0], &[]).unwrap(),
            vec![0, 1, 2, 1, 0]
        );
    }

    #[test]
    fn repetition_majority() {
        let code = Repetition::new(3, 4, 1).unwrap();
        let payload = vec![0, 1, 2, 1];
        let parity = code.encode(&payload).unwrap();
        assert_eq!(parity.len(), 8);
        let received = vec![2, 1, 2, 0];
        assert_eq!(code.decode(&received, &parity).unwrap(), payload);
        // three different symbols in position 0
        let mut parity = parity;
        parity[0] = 1;
        assert!(matches!(
            code.decode(&received, &parity),
            Err(Error::Unrecoverable(_))
        ));
    }
}
