//! Integer power series truncated at a fixed order, and the closed-form
//! identities between Hilbert and Poincaré series of the constructions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("missing input `{0}`")]
    MissingRole(String),
    #[error("input `{0}` has the wrong kind (series or integer)")]
    WrongKind(String),
    #[error("constant term {0} is not invertible over the integers")]
    NonInvertibleLeadingTerm(i128),
    #[error("input `{role}` is known to order {have}, {want} is needed")]
    InsufficientOrder { role: String, have: usize, want: usize },
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error("the a-invariant {a} is smaller than the degree {deg} of H_T")]
    BadShift { a: i64, deg: usize },
}

/// `c_0 + c_1 z + ... + c_N z^N` modulo `z^(N+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<i128>,
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("series coefficient overflow")
}

impl TruncatedSeries {
    /// Pads with zeros or truncates to `order`.
    pub fn new(coeffs: &[i128], order: usize) -> Self {
        let mut c = coeffs.to_vec();
        c.resize(order + 1, 0);
        TruncatedSeries { coeffs: c }
    }

    pub fn from_counts<T: Copy + Into<u64>>(counts: &[T], order: usize) -> Self {
        let c: Vec<i128> = counts.iter().map(|&x| x.into() as i128).collect();
        Self::new(&c, order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(&[], order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(&[1], order)
    }

    /// `c z^k`.
    pub fn monomial(c: i128, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(&self.coeffs, order)
    }

    pub fn scale(&self, c: i128) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|&x| checked(x.checked_mul(c))).collect() }
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![0; k];
        c.extend_from_slice(&self.coeffs);
        Self::new(&c, self.order())
    }

    /// Inverse, when the constant term is `±1`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return Err(SeriesError::NonInvertibleLeadingTerm(c0));
        }
        let n = self.order();
        let mut inv = vec![0i128; n + 1];
        inv[0] = c0;
        for k in 1..=n {
            let mut acc = 0i128;
            for j in 1..=k {
                acc = checked(acc.checked_add(checked(self.coeffs[j].checked_mul(inv[k - j]))));
            }
            // c0 * inv[k] = -acc, and c0 = 1/c0
            inv[k] = checked((-acc).checked_mul(c0));
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * &other.reciprocal()?)
    }

    /// `a_i <= b_i` for every `i` up to the smaller order.
    pub fn termwise_leq(&self, other: &Self) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }

    /// First index where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i128, i128) -> Option<i128>) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries { coeffs: (0..=n).map(|i| checked(f(self.coeffs[i], other.coeffs[i]))).collect() }
    }
}

/// Termwise inequality `a ≼ b`.
pub fn termwise_leq(a: &TruncatedSeries, b: &TruncatedSeries) -> bool {
    a.termwise_leq(b)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, abs) {
                (0, _) => write!(f, "{abs}")?,
                (1, 1) => f.write_str("z")?,
                (1, _) => write!(f, "{abs}*z")?,
                (_, 1) => write!(f, "z^{i}")?,
                _ => write!(f, "{abs}*z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(o, i128::checked_add)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(o, i128::checked_sub)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(-1)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(o.order());
        let mut c = vec![0i128; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] = checked(c[i + j].checked_add(checked(a.checked_mul(b))));
            }
        }
        TruncatedSeries { coeffs: c }
    }
}

/// `numerator / denominator` with integer polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: Vec<i128>,
    pub denominator: Vec<i128>,
}

impl RationalSeries {
    pub fn new(numerator: &[i128], denominator: &[i128]) -> Self {
        RationalSeries { numerator: numerator.to_vec(), denominator: denominator.to_vec() }
    }

    /// `(1 + z)^b / (1 - z)^c`.
    pub fn complete_intersection(b: u32, c: u32) -> Self {
        RationalSeries::new(&poly_pow(&[1, 1], b), &poly_pow(&[1, -1], c))
    }

    pub fn expand(&self, order: usize) -> Result<TruncatedSeries, SeriesError> {
        let num = TruncatedSeries::new(&self.numerator, order);
        let den = TruncatedSeries::new(&self.denominator, order);
        num.div(&den)
    }
}

fn poly_pow(p: &[i128], e: u32) -> Vec<i128> {
    let mut out = vec![1i128];
    for _ in 0..e {
        let mut next = vec![0i128; out.len() + p.len() - 1];
        for (i, &a) in out.iter().enumerate() {
            for (j, &b) in p.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        out = next;
    }
    out
}

/// The named series identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    /// `H_{R×S} = H_R + H_S - H_T`.
    HilbProd,
    /// `H_{R#S} = H_R + H_S - H_T - H_V`.
    HilbSum,
    /// `H_{R#S} = H_R + H_S - H_T - z^a H_T(1/z)`.
    HilbSumGor,
    /// `P^{R×_k S}_M = P^R_M P^S_k / (P^R_k + P^S_k - P^R_k P^S_k)`.
    DressKramer,
    /// Poincaré series of `R' ×_k S'` over `R ×_k S`.
    FibprodMap,
    /// `P^P_k / (1 + z - z P^P_Q)`, an upper bound for `P^Q_k`.
    GolodBound,
    /// `P^P_k / (1 - r z^2 P^P_k)` when the kernel is killed by the maximal ideal.
    SpecialGolod,
    /// `1/H = 1/H_B + 1/H_C - 1/H_A`.
    Amalgam,
    /// `P^Q_N = P^{R'}_N P^{S'}_k / (P^{R'}_k + P^{S'}_k - (1 - r z^2) P^{R'}_k P^{S'}_k)`.
    ConnsumPoincare,
    /// `1/P^Q_k = 1/P^{R'}_k + 1/P^{S'}_k - 1 + r z^2`.
    SeriesQ,
}

impl FormulaId {
    pub const ALL: [FormulaId; 10] = [
        FormulaId::HilbProd,
        FormulaId::HilbSum,
        FormulaId::HilbSumGor,
        FormulaId::DressKramer,
        FormulaId::FibprodMap,
        FormulaId::GolodBound,
        FormulaId::SpecialGolod,
        FormulaId::Amalgam,
        FormulaId::ConnsumPoincare,
        FormulaId::SeriesQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::HilbProd => "HILB_PROD",
            FormulaId::HilbSum => "HILB_SUM",
            FormulaId::HilbSumGor => "HILB_SUM_GOR",
            FormulaId::DressKramer => "DRESS_KRAMER",
            FormulaId::FibprodMap => "FIBPROD_MAP",
            FormulaId::GolodBound => "GOLOD_BOUND",
            FormulaId::SpecialGolod => "SPECIAL_GOLOD",
            FormulaId::Amalgam => "AMALGAM",
            FormulaId::ConnsumPoincare => "CONNSUM_POINCARE",
            FormulaId::SeriesQ => "SERIES_Q",
        }
    }

    /// Input names; `a` and `r` are integers, everything else a series.
    pub fn roles(self) -> &'static [&'static str] {
        match self {
            FormulaId::HilbProd => &["H_R", "H_S", "H_T"],
            FormulaId::HilbSum => &["H_R", "H_S", "H_T", "H_V"],
            FormulaId::HilbSumGor => &["H_R", "H_S", "H_T", "a"],
            FormulaId::DressKramer => &["P_R_M", "P_R_k", "P_S_k"],
            FormulaId::FibprodMap => &["P_R_R'", "P_S_S'", "P_R_k", "P_S_k"],
            FormulaId::GolodBound => &["P_P_k", "P_P_Q"],
            FormulaId::SpecialGolod => &["P_P_k", "r"],
            FormulaId::Amalgam => &["H_A", "H_B", "H_C"],
            FormulaId::ConnsumPoincare => &["P_R'_N", "P_R'_k", "P_S'_k", "r"],
            FormulaId::SeriesQ => &["P_R'_k", "P_S'_k", "r"],
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, SeriesError> {
        FormulaId::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| SeriesError::UnknownFormula(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaInput {
    Series(TruncatedSeries),
    Int(i64),
}

impl From<TruncatedSeries> for FormulaInput {
    fn from(s: TruncatedSeries) -> Self {
        FormulaInput::Series(s)
    }
}

impl From<i64> for FormulaInput {
    fn from(v: i64) -> Self {
        FormulaInput::Int(v)
    }
}

pub type FormulaInputs = BTreeMap<String, FormulaInput>;

struct Lookup<'a> {
    inputs: &'a FormulaInputs,
    order: usize,
}

impl Lookup<'_> {
    fn series(&self, role: &str) -> Result<TruncatedSeries, SeriesError> {
        match self.inputs.get(role) {
            Some(FormulaInput::Series(s)) if s.order() >= self.order => Ok(s.truncate(self.order)),
            Some(FormulaInput::Series(s)) => {
                Err(SeriesError::InsufficientOrder { role: role.to_string(), have: s.order(), want: self.order })
            }
            Some(FormulaInput::Int(_)) => Err(SeriesError::WrongKind(role.to_string())),
            None => Err(SeriesError::MissingRole(role.to_string())),
        }
    }

    fn int(&self, role: &str) -> Result<i64, SeriesError> {
        match self.inputs.get(role) {
            Some(FormulaInput::Int(v)) => Ok(*v),
            Some(_) => Err(SeriesError::WrongKind(role.to_string())),
            None => Err(SeriesError::MissingRole(role.to_string())),
        }
    }
}

/// Right-hand side of `id` expanded to `order`.
pub fn evaluate_formula(id: FormulaId, inputs: &FormulaInputs, order: usize) -> Result<TruncatedSeries, SeriesError> {
    let l = Lookup { inputs, order };
    let one = TruncatedSeries::one(order);
    let z = TruncatedSeries::monomial(1, 1, order);
    let fiber_den = |pr: &TruncatedSeries, ps: &TruncatedSeries| &(pr + ps) - &(pr * ps);
    Ok(match id {
        FormulaId::HilbProd => &(&l.series("H_R")? + &l.series("H_S")?) - &l.series("H_T")?,
        FormulaId::HilbSum => &(&(&l.series("H_R")? + &l.series("H_S")?) - &l.series("H_T")?) - &l.series("H_V")?,
        FormulaId::HilbSumGor => {
            let ht = l.series("H_T")?;
            let a = l.int("a")?;
            let deg = ht.coeffs().iter().rposition(|&c| c != 0).unwrap_or(0);
            if a < deg as i64 {
                return Err(SeriesError::BadShift { a, deg });
            }
            let mut rev = TruncatedSeries::zero(order);
            for i in 0..=deg {
                let k = a as usize - i;
                if k <= order {
                    rev.coeffs[k] += ht.coeff(i);
                }
            }
            &(&(&l.series("H_R")? + &l.series("H_S")?) - &ht) - &rev
        }
        FormulaId::DressKramer => {
            let (pm, pr, ps) = (l.series("P_R_M")?, l.series("P_R_k")?, l.series("P_S_k")?);
            (&pm * &ps).div(&fiber_den(&pr, &ps))?
        }
        FormulaId::FibprodMap => {
            let (prr, pss) = (l.series("P_R_R'")?, l.series("P_S_S'")?);
            let (pr, ps) = (l.series("P_R_k")?, l.series("P_S_k")?);
            let num = &(&(&prr * &ps) + &(&pss * &pr)) - &(&pr * &ps);
            num.div(&fiber_den(&pr, &ps))?
        }
        FormulaId::GolodBound => {
            let (pk, pq) = (l.series("P_P_k")?, l.series("P_P_Q")?);
            pk.div(&(&(&one + &z) - &(&z * &pq)))?
        }
        FormulaId::SpecialGolod => {
            let pk = l.series("P_P_k")?;
            let r = l.int("r")? as i128;
            pk.div(&(&one - &pk.shift(2).scale(r)))?
        }
        FormulaId::Amalgam => {
            let (ha, hb, hc) = (l.series("H_A")?, l.series("H_B")?, l.series("H_C")?);
            let inv = &(&hb.reciprocal()? + &hc.reciprocal()?) - &ha.reciprocal()?;
            inv.reciprocal()?
        }
        FormulaId::ConnsumPoincare => {
            let (pn, pr, ps) = (l.series("P_R'_N")?, l.series("P_R'_k")?, l.series("P_S'_k")?);
            let r = l.int("r")? as i128;
            let twist = &one - &TruncatedSeries::monomial(r, 2, order);
            let den = &(&pr + &ps) - &(&twist * &(&pr * &ps));
            (&pn * &ps).div(&den)?
        }
        FormulaId::SeriesQ => {
            let (pr, ps) = (l.series("P_R'_k")?, l.series("P_S'_k")?);
            let r = l.int("r")? as i128;
            let inv = &(&(&pr.reciprocal()? + &ps.reciprocal()?) - &one) + &TruncatedSeries::monomial(r, 2, order);
            inv.reciprocal()?
        }
    })
}
