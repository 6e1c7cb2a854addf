//! Generating sets and the exact point sets of the digital nets they define.
//!
//! Points are stored as integer numerators over the common denominator
//! `b^m`, so every structural statement about reduced nets (grid
//! membership, column repetition) can be asserted bit-exactly. Floating
//! point values only appear at the matrix-product boundary.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{is_prime, GfMatrix};

/// Hard cap on `b^m * s` table entries for exact net generation.
const NET_ENTRY_BUDGET: u64 = 100_000_000;

/// `s` generating matrices of size `m x m` over `F_b`.
///
/// `from_sequence` records whether the matrices are upper-left sections of
/// the generating matrices of a digital sequence; column-type reductions
/// require this for their quality guarantees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    b: u64,
    m: usize,
    s: usize,
    matrices: Vec<GfMatrix>,
    from_sequence: bool,
}

impl GeneratingSet {
    pub fn new(b: u64, m: usize, matrices: Vec<GfMatrix>, from_sequence: bool) -> Result<Self> {
        if !is_prime(b) {
            return Err(Error::NotPrime(b));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("matrix size m must be >= 1".into()));
        }
        if matrices.is_empty() {
            return Err(Error::InvalidParameter("dimension s must be >= 1".into()));
        }
        for (j, c) in matrices.iter().enumerate() {
            if c.modulus() != b || c.rows() != m || c.cols() != m {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {} is {}x{} over F_{}, expected {m}x{m} over F_{b}",
                    j + 1,
                    c.rows(),
                    c.cols(),
                    c.modulus()
                )));
            }
        }
        Ok(Self {
            b,
            m,
            s: matrices.len(),
            matrices,
            from_sequence,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.b
    }

    pub fn matrix_size(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.s
    }

    pub fn matrices(&self) -> &[GfMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, j: usize) -> &GfMatrix {
        &self.matrices[j]
    }

    pub fn from_sequence(&self) -> bool {
        self.from_sequence
    }

    /// Restricts the set to the coordinates in `u` (0-based, in order).
    pub fn project(&self, u: &[usize]) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::InvalidParameter("projection onto the empty set".into()));
        }
        let mut matrices = Vec::with_capacity(u.len());
        for &j in u {
            if j >= self.s {
                return Err(Error::InvalidParameter(format!(
                    "coordinate index {j} out of range for dimension {}",
                    self.s
                )));
            }
            matrices.push(self.matrices[j].clone());
        }
        Self::new(self.b, self.m, matrices, self.from_sequence)
    }

    /// Number of points `b^m` of the generated net.
    pub fn point_count(&self) -> Result<u64> {
        checked_pow(self.b, self.m as u32).ok_or_else(|| {
            Error::BudgetExceeded(format!("b^m = {}^{} overflows", self.b, self.m))
        })
    }

    /// Canonical text form: `b m s from_sequence`, then for each matrix
    /// its `m` rows of space-separated digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {} {} {}\n",
            self.b,
            self.m,
            self.s,
            if self.from_sequence { 1 } else { 0 }
        ));
        for c in &self.matrices {
            for i in 0..self.m {
                let row: Vec<String> = c.row(i).iter().map(|d| d.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty generating-set file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!(
                "header must be `b m s from_sequence`, got {header:?}"
            )));
        }
        let b: u64 = parse_field(fields[0], "b")?;
        let m: usize = parse_field(fields[1], "m")?;
        let s: usize = parse_field(fields[2], "s")?;
        let from_sequence = match fields[3] {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::Parse(format!(
                    "from_sequence must be 0 or 1, got {other:?}"
                )))
            }
        };
        let mut matrices = Vec::with_capacity(s);
        for j in 0..s {
            let mut rows = Vec::with_capacity(m);
            for i in 0..m {
                let line = lines.next().ok_or_else(|| {
                    Error::Parse(format!("missing row {} of matrix {}", i + 1, j + 1))
                })?;
                let row: Vec<u8> = line
                    .split_whitespace()
                    .map(|tok| parse_field::<u8>(tok, "digit"))
                    .collect::<Result<_>>()?;
                if row.len() != m {
                    return Err(Error::Parse(format!(
                        "row {} of matrix {} has {} entries, expected {m}",
                        i + 1,
                        j + 1,
                        row.len()
                    )));
                }
                rows.push(row);
            }
            matrices.push(GfMatrix::from_rows(b, &rows)?);
        }
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(Error::Parse(format!("trailing content: {extra:?}")));
        }
        GeneratingSet::new(b, m, matrices, from_sequence)
    }
}

fn parse_field<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("invalid {what}: {tok:?}")))
}

fn checked_pow(b: u64, e: u32) -> Option<u64> {
    b.checked_pow(e)
}

/// Base-`b` digits of `k`, least-significant first, padded to length `m`.
pub fn digits_of(k: u64, b: u64, m: usize) -> Result<Vec<u8>> {
    if !is_prime(b) {
        return Err(Error::NotPrime(b));
    }
    let n = checked_pow(b, m as u32)
        .ok_or_else(|| Error::BudgetExceeded(format!("b^m = {b}^{m} overflows")))?;
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "index {k} out of range for b^m = {n}"
        )));
    }
    let mut digits = vec![0u8; m];
    let mut rest = k;
    for d in digits.iter_mut() {
        *d = (rest % b) as u8;
        rest /= b;
    }
    Ok(digits)
}

/// The exact point set of a digital net: `b^m` points in `[0,1)^s` stored
/// as numerators over `b^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalNet {
    b: u64,
    m: usize,
    s: usize,
    /// Row-major `N x s`; `numerators[k * s + j] / b^m` is coordinate `j`
    /// of point `k`.
    numerators: Vec<u64>,
}

impl DigitalNet {
    /// Builds a point set directly from numerators (row-major `N x s`
    /// over `b^m`). Mostly useful for oracles and for reading point
    /// files; nets of actual generating sets come from [`generate_net`].
    pub fn from_numerators(b: u64, m: usize, s: usize, numerators: Vec<u64>) -> Result<Self> {
        if !is_prime(b) {
            return Err(Error::NotPrime(b));
        }
        let n = checked_pow(b, m as u32)
            .ok_or_else(|| Error::BudgetExceeded(format!("b^m = {b}^{m} overflows")))?;
        if numerators.len() as u64 != n * s as u64 {
            return Err(Error::DimensionMismatch(format!(
                "{} numerators for {n} points in dimension {s}",
                numerators.len()
            )));
        }
        if numerators.iter().any(|&v| v >= n) {
            return Err(Error::InvalidParameter(format!(
                "numerator out of range [0, {n})"
            )));
        }
        Ok(Self {
            b,
            m,
            s,
            numerators,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.b
    }

    pub fn matrix_size(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.s
    }

    pub fn point_count(&self) -> u64 {
        self.b.pow(self.m as u32)
    }

    pub fn denominator(&self) -> u64 {
        self.point_count()
    }

    pub fn numerator(&self, k: u64, j: usize) -> u64 {
        self.numerators[k as usize * self.s + j]
    }

    pub fn coordinate(&self, k: u64, j: usize) -> f64 {
        self.numerator(k, j) as f64 / self.denominator() as f64
    }

    /// Numerators of coordinate `j` in point order.
    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.point_count()).map(|k| self.numerator(k, j)).collect()
    }

    /// Keeps only the coordinates in `u` (0-based, in order).
    pub fn project(&self, u: &[usize]) -> Result<Self> {
        if u.is_empty() || u.iter().any(|&j| j >= self.s) {
            return Err(Error::InvalidParameter(format!(
                "invalid projection {u:?} for dimension {}",
                self.s
            )));
        }
        let n = self.point_count() as usize;
        let mut numerators = Vec::with_capacity(n * u.len());
        for k in 0..n {
            for &j in u {
                numerators.push(self.numerators[k * self.s + j]);
            }
        }
        Ok(Self {
            b: self.b,
            m: self.m,
            s: u.len(),
            numerators,
        })
    }

    /// CSV export with header `k,x_1,...,x_s`. Coordinates are written as
    /// exact decimal strings when the expansion terminates (b = 2 or 5)
    /// and as exact fractions `p/b^m` otherwise.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k");
        for j in 1..=self.s {
            out.push_str(&format!(",x_{j}"));
        }
        out.push('\n');
        let den = self.denominator();
        for k in 0..self.point_count() {
            out.push_str(&k.to_string());
            for j in 0..self.s {
                out.push(',');
                out.push_str(&coordinate_string(self.numerator(k, j), self.b, self.m, den));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty net file".into()))?;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.first() != Some(&"k") || cols.len() < 2 {
            return Err(Error::Parse(format!("bad net header {header:?}")));
        }
        let s = cols.len() - 1;
        let rows: Vec<&str> = lines.filter(|l| !l.trim().is_empty()).collect();
        let n = rows.len() as u64;
        let (b, m) = infer_base(n)
            .ok_or_else(|| Error::Parse(format!("point count {n} is not a prime power")))?;
        let den = n;
        let mut numerators = Vec::with_capacity(rows.len() * s);
        for (k, row) in rows.iter().enumerate() {
            let fields: Vec<&str> = row.split(',').collect();
            if fields.len() != s + 1 {
                return Err(Error::Parse(format!("row {k} has {} fields", fields.len())));
            }
            let kk: u64 = parse_field(fields[0], "point index")?;
            if kk != k as u64 {
                return Err(Error::Parse(format!("point index {kk}, expected {k}")));
            }
            for f in &fields[1..] {
                numerators.push(parse_coordinate(f, den)?);
            }
        }
        Ok(Self { b, m, s, numerators })
    }
}

fn coordinate_string(num: u64, b: u64, m: usize, den: u64) -> String {
    if num == 0 {
        return "0".to_string();
    }
    if b == 2 || b == 5 {
        // num / b^m = num * (10/b)^m / 10^m, which terminates.
        let cofactor = if b == 2 { 5u128 } else { 2u128 };
        let scaled = num as u128 * cofactor.pow(m as u32);
        let mut digits = format!("{scaled:0>width$}", width = m);
        while digits.ends_with('0') {
            digits.pop();
        }
        format!("0.{digits}")
    } else {
        format!("{num}/{den}")
    }
}

fn parse_coordinate(field: &str, den: u64) -> Result<u64> {
    let bad = || Error::Parse(format!("invalid coordinate {field:?}"));
    if let Some((p, q)) = field.split_once('/') {
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        if q != den || p >= den {
            return Err(bad());
        }
        return Ok(p);
    }
    if field == "0" {
        return Ok(0);
    }
    let digits = field.strip_prefix("0.").ok_or_else(bad)?;
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    // value = digits / 10^len; numerator = value * den must be integral.
    let value: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = BigInt::from(10u32).pow(digits.len() as u32);
    let scaled = value * BigInt::from(den);
    let (num, rem) = num_integer::div_rem(scaled, scale);
    if !rem.is_zero() {
        return Err(bad());
    }
    let num = num.to_u64().ok_or_else(bad)?;
    if num >= den {
        return Err(bad());
    }
    Ok(num)
}

/// Recovers `(b, m)` from a prime-power point count.
fn infer_base(n: u64) -> Option<(u64, usize)> {
    if n < 2 {
        return None;
    }
    let mut b = 2u64;
    loop {
        if b * b > n {
            // n itself must be prime.
            return is_prime(n).then_some((n, 1));
        }
        if n % b == 0 {
            let mut m = 0usize;
            let mut rest = n;
            while rest % b == 0 {
                rest /= b;
                m += 1;
            }
            return (rest == 1 && is_prime(b)).then_some((b, m));
        }
        b += 1;
    }
}

/// Generates the exact point set of the digital net defined by `g`.
///
/// For each index `k` and coordinate `j`, the digit vector of `k` is
/// multiplied by the `j`-th matrix over `F_b` and the resulting digit
/// string is read as an integer numerator over `b^m`.
pub fn generate_net(g: &GeneratingSet) -> Result<DigitalNet> {
    let b = g.b;
    let m = g.m;
    let n = g.point_count()?;
    if n.checked_mul(g.s as u64).map_or(true, |t| t > NET_ENTRY_BUDGET) {
        return Err(Error::BudgetExceeded(format!(
            "net with {n} points in dimension {} exceeds the entry budget",
            g.s
        )));
    }
    // Digit-significance weights b^{m-1}, ..., b, 1.
    let weights: Vec<u64> = (0..m).map(|i| b.pow((m - 1 - i) as u32)).collect();
    let mut numerators = Vec::with_capacity((n as usize) * g.s);
    let mut digits = vec![0u8; m];
    for k in 0..n {
        let mut rest = k;
        for d in digits.iter_mut() {
            *d = (rest % b) as u8;
            rest /= b;
        }
        for c in &g.matrices {
            let y = c.mat_vec(&digits)?;
            let num: u64 = y.iter().zip(&weights).map(|(d, w)| *d as u64 * w).sum();
            numerators.push(num);
        }
    }
    Ok(DigitalNet {
        b,
        m,
        s: g.s,
        numerators,
    })
}

/// Generating set with i.i.d. uniform entries from a seeded ChaCha8
/// stream (64-bit seed; matrices filled in index order, each matrix
/// row-major, one uniform draw from `[0, b)` per entry). Identical seeds
/// give identical sets. `from_sequence` is false.
pub fn random_generating_set(b: u64, m: usize, s: usize, seed: u64) -> Result<GeneratingSet> {
    if !is_prime(b) {
        return Err(Error::NotPrime(b));
    }
    if m == 0 || s == 0 {
        return Err(Error::InvalidParameter("m and s must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrices = Vec::with_capacity(s);
    for _ in 0..s {
        let rows: Vec<Vec<u8>> = (0..m)
            .map(|_| (0..m).map(|_| rng.gen_range(0..b) as u8).collect())
            .collect();
        matrices.push(GfMatrix::from_rows(b, &rows)?);
    }
    GeneratingSet::new(b, m, matrices, false)
}

/// Upper-triangular Pascal matrix `P` with entry `(i, r) = binom(r, i)
/// mod b` (0-based), and the generating set `C_j = P^(j-1)`.
///
/// This is the classical construction of a `(0, s)`-sequence in base `b`
/// for `s <= b`; the matrices are upper-left sections of the sequence
/// matrices, so `from_sequence` is true and the resulting net is a
/// `(0, m, s)`-net.
pub fn pascal_generating_set(b: u64, m: usize, s: usize) -> Result<GeneratingSet> {
    if !is_prime(b) {
        return Err(Error::NotPrime(b));
    }
    if s as u64 > b {
        return Err(Error::InvalidParameter(format!(
            "the Pascal construction needs s <= b, got s = {s}, b = {b}"
        )));
    }
    if m == 0 || s == 0 {
        return Err(Error::InvalidParameter("m and s must be >= 1".into()));
    }
    // binom(r, i) mod b via Pascal's rule.
    let mut binom = vec![vec![0u8; m]; m];
    for r in 0..m {
        binom[r][0] = 1;
        for i in 1..=r {
            let above = binom[r - 1][i] as u64;
            let left = binom[r - 1][i - 1] as u64;
            binom[r][i] = ((above + left) % b) as u8;
        }
    }
    let mut pascal = GfMatrix::zero(b, m, m)?;
    for i in 0..m {
        for r in i..m {
            pascal.set(i, r, binom[r][i]);
        }
    }
    let mut matrices = Vec::with_capacity(s);
    let mut power = GfMatrix::identity(b, m)?;
    for j in 0..s {
        if j > 0 {
            power = power.mat_mul(&pascal)?;
        }
        matrices.push(power.clone());
    }
    GeneratingSet::new(b, m, matrices, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_examples() {
        assert_eq!(digits_of(0, 2, 3).unwrap(), vec![0, 0, 0]);
        assert_eq!(digits_of(6, 2, 3).unwrap(), vec![0, 1, 1]);
        assert_eq!(digits_of(7, 3, 2).unwrap(), vec![1, 2]);
        assert!(digits_of(8, 2, 3).is_err());
    }

    #[test]
    fn van_der_corput_points() {
        let g = GeneratingSet::new(2, 2, vec![GfMatrix::identity(2, 2).unwrap()], true).unwrap();
        let net = generate_net(&g).unwrap();
        let col = net.column(0);
        assert_eq!(col, vec![0, 2, 1, 3]);
    }

    #[test]
    fn zero_matrix_column_is_zero() {
        let g = GeneratingSet::new(
            3,
            2,
            vec![
                GfMatrix::identity(3, 2).unwrap(),
                GfMatrix::zero(3, 2, 2).unwrap(),
            ],
            false,
        )
        .unwrap();
        let net = generate_net(&g).unwrap();
        assert!(net.column(1).iter().all(|&n| n == 0));
    }

    #[test]
    fn all_ones_matrix_points() {
        let ones = GfMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let g = GeneratingSet::new(2, 2, vec![ones], false).unwrap();
        let net = generate_net(&g).unwrap();
        let coords: Vec<f64> = (0..4).map(|k| net.coordinate(k, 0)).collect();
        assert_eq!(coords, vec![0.0, 0.75, 0.75, 0.0]);
    }

    #[test]
    fn invertible_column_is_a_permutation() {
        for m in 1..=6usize {
            for seed in 0..8u64 {
                let g = random_generating_set(2, m, 1, seed).unwrap();
                if g.matrix(0).rank() < m {
                    continue;
                }
                let net = generate_net(&g).unwrap();
                let mut col = net.column(0);
                col.sort_unstable();
                let expected: Vec<u64> = (0..net.point_count()).collect();
                assert_eq!(col, expected, "m={m} seed={seed}");
            }
        }
    }

    #[test]
    fn random_set_is_deterministic() {
        let a = random_generating_set(3, 4, 3, 42).unwrap();
        let b = random_generating_set(3, 4, 3, 42).unwrap();
        assert_eq!(a, b);
        let c = random_generating_set(3, 4, 3, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_single_entry_in_range() {
        for seed in 0..32 {
            let g = random_generating_set(2, 1, 1, seed).unwrap();
            assert!(g.matrix(0).get(0, 0) < 2);
        }
    }

    #[test]
    fn full_rank_fraction_matches_theory() {
        // Over F_2 the fraction of invertible 4x4 matrices is
        // prod_{i=1..4} (1 - 2^-i) = 315/1024 ~ 0.30762.
        let mut full = 0usize;
        let trials = 1000;
        for seed in 0..trials {
            let g = random_generating_set(2, 4, 1, seed as u64).unwrap();
            if g.matrix(0).rank() == 4 {
                full += 1;
            }
        }
        let fraction = full as f64 / trials as f64;
        assert!((fraction - 315.0 / 1024.0).abs() < 0.05, "fraction = {fraction}");
    }

    #[test]
    fn pascal_first_matrix_is_identity() {
        let g = pascal_generating_set(3, 4, 2).unwrap();
        assert_eq!(g.matrix(0), &GfMatrix::identity(3, 4).unwrap());
    }

    #[test]
    fn pascal_second_matrix_b3() {
        let g = pascal_generating_set(3, 3, 2).unwrap();
        let p = g.matrix(1);
        assert_eq!(p.row(0), &[1, 1, 1]);
        assert_eq!(p.row(1), &[0, 1, 2]);
        assert_eq!(p.row(2), &[0, 0, 1]);
    }

    #[test]
    fn pascal_rejects_s_above_b() {
        assert!(pascal_generating_set(2, 3, 3).is_err());
        assert!(pascal_generating_set(3, 3, 3).is_ok());
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let g = random_generating_set(5, 3, 4, 7).unwrap();
        let text = g.to_text();
        let back = GeneratingSet::parse_text(&text).unwrap();
        assert_eq!(g, back);
        assert_eq!(text, back.to_text());
    }

    #[test]
    fn text_rejects_malformed() {
        assert!(GeneratingSet::parse_text("").is_err());
        assert!(GeneratingSet::parse_text("2 2 1 5\n1 0\n0 1\n").is_err());
        assert!(GeneratingSet::parse_text("2 2 1 0\n1 0\n").is_err());
        assert!(GeneratingSet::parse_text("2 2 1 0\n1 0\n0 1\n1 1\n").is_err());
    }

    #[test]
    fn csv_round_trip_base2() {
        let g = random_generating_set(2, 4, 3, 11).unwrap();
        let net = generate_net(&g).unwrap();
        let csv = net.to_csv();
        let back = DigitalNet::parse_csv(&csv).unwrap();
        assert_eq!(net, back);
        assert_eq!(csv, back.to_csv());
    }

    #[test]
    fn csv_round_trip_base3_fractions() {
        let g = pascal_generating_set(3, 2, 2).unwrap();
        let net = generate_net(&g).unwrap();
        let csv = net.to_csv();
        assert!(csv.contains('/'));
        let back = DigitalNet::parse_csv(&csv).unwrap();
        assert_eq!(net, back);
    }

    #[test]
    fn csv_decimal_strings_are_exact() {
        // 3/16 must print as 0.1875, not a rounded float.
        assert_eq!(coordinate_string(3, 2, 4, 16), "0.1875");
        assert_eq!(coordinate_string(2, 2, 2, 4), "0.5");
        assert_eq!(coordinate_string(0, 2, 4, 16), "0");
        assert_eq!(coordinate_string(4, 3, 2, 9), "4/9");
    }

    #[test]
    fn generation_is_order_independent() {
        // Re-deriving single points matches the bulk table.
        let g = random_generating_set(3, 3, 2, 9).unwrap();
        let net = generate_net(&g).unwrap();
        let weights: Vec<u64> = (0..3).map(|i| 3u64.pow(2 - i)).collect();
        for k in (0..net.point_count()).rev() {
            let digits = digits_of(k, 3, 3).unwrap();
            for j in 0..2 {
                let y = g.matrix(j).mat_vec(&digits).unwrap();
                let num: u64 = y.iter().zip(&weights).map(|(d, w)| *d as u64 * w).sum();
                assert_eq!(net.numerator(k, j), num);
            }
        }
    }
}
