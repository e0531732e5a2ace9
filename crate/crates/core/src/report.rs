use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::Rational;

/// Every inequality the checkers know about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    /// `|F_l|(|F_j| + |F_{j+l}| - |H|) <= #{x in F_l, y in F_j, x + y in F_{j+l}}`.
    TripleLowerBound,
    /// `alpha_j + alpha_{j+l} <= 1 + delta q^2 / alpha_l`.
    CosetPairSum,
    /// `sum_{i in L(t)} alpha_i <= delta q^2 / t`.
    LargePairMass,
    /// `sum_{i=k+1}^{5k} alpha_i <= 2k + 2 delta^{1/2} q^{3/2}`.
    MiddleSum,
    /// `Re F^(gamma_s) <= (delta - alpha^3) n / (alpha (1 - alpha))`.
    SpecialDirectionBound,
    /// `q^-1 sum_j alpha_j cos(2 pi j / q) + mu(Z_q)^2 / (1 - mu(Z_q)) < 6 delta`.
    CosineSum,
    /// `alpha <= max(1/3, mu + 3 delta^{1/3})`.
    DensityThird,
    /// `alpha <= mu + 1/(3m) + 3 delta^{1/3}` for type III groups.
    DensityExponent,
    /// `alpha <= mu + C delta^{1/3}` with a configured `C`.
    DensityCubeRoot,
    /// `alpha_i <= 64 delta^{1/3} q^{2/3}` on the outer cosets, small `q` only.
    SmallOrderCoset,
    /// Pair-scan and character-sum triple counts agree.
    BackendAgreement,
}

impl CheckName {
    pub const ALL: [CheckName; 11] = [
        CheckName::TripleLowerBound,
        CheckName::CosetPairSum,
        CheckName::LargePairMass,
        CheckName::MiddleSum,
        CheckName::SpecialDirectionBound,
        CheckName::CosineSum,
        CheckName::DensityThird,
        CheckName::DensityExponent,
        CheckName::DensityCubeRoot,
        CheckName::SmallOrderCoset,
        CheckName::BackendAgreement,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::TripleLowerBound => "triple_lower_bound",
            CheckName::CosetPairSum => "coset_pair_sum",
            CheckName::LargePairMass => "large_pair_mass",
            CheckName::MiddleSum => "middle_sum",
            CheckName::SpecialDirectionBound => "special_direction_bound",
            CheckName::CosineSum => "cosine_sum",
            CheckName::DensityThird => "density_third",
            CheckName::DensityExponent => "density_exponent",
            CheckName::DensityCubeRoot => "density_cube_root",
            CheckName::SmallOrderCoset => "small_order_coset",
            CheckName::BackendAgreement => "backend_agreement",
        }
    }

    /// Hard checks fail a sweep; the rest are recorded only.
    pub fn is_hard(self) -> bool {
        !matches!(
            self,
            CheckName::CosineSum | CheckName::DensityCubeRoot | CheckName::SmallOrderCoset
        )
    }

    /// Checks that depend on a chosen character rather than only on the subset.
    pub fn is_per_character(self) -> bool {
        matches!(
            self,
            CheckName::TripleLowerBound
                | CheckName::CosetPairSum
                | CheckName::LargePairMass
                | CheckName::MiddleSum
        )
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::Parse(alloc::format!("unknown check {s:?}")))
    }
}

/// One side of an inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Exact(Rational),
    Real(f64),
}

impl Value {
    pub fn to_f64(self) -> f64 {
        match self {
            Value::Exact(r) => crate::to_f64(r),
            Value::Real(x) => x,
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

/// Rationals print as `p/q` (or `p`), reals in shortest round-trip form.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Real(x) => write!(f, "{x:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Holds,
    Fails,
    /// Preconditions of the inequality are not met.
    NotApplicable,
}

impl Outcome {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Holds => "true",
            Outcome::Fails => "false",
            Outcome::NotApplicable => "n/a",
        }
    }
}

/// Parameters needed to replay a check.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub l: Option<u64>,
    pub j: Option<u64>,
    pub t: Option<Rational>,
    pub delta: Option<Rational>,
}

/// `key=value` pairs joined by `;`, e.g. `l=1;j=2;delta=3/100`.
impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sep = "";
        if let Some(l) = self.l {
            write!(f, "{sep}l={l}")?;
            sep = ";";
        }
        if let Some(j) = self.j {
            write!(f, "{sep}j={j}")?;
            sep = ";";
        }
        if let Some(t) = self.t {
            write!(f, "{sep}t={t}")?;
            sep = ";";
        }
        if let Some(d) = self.delta {
            write!(f, "{sep}delta={d}")?;
        }
        Ok(())
    }
}

impl FromStr for Params {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Params::default();
        let bad = |what: &str| Error::Parse(alloc::format!("bad parameter {what:?}"));
        for item in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| bad(item))?;
            match k {
                "l" => p.l = Some(v.parse().map_err(|_| bad(item))?),
                "j" => p.j = Some(v.parse().map_err(|_| bad(item))?),
                "t" => p.t = Some(v.parse().map_err(|_| bad(item))?),
                "delta" => p.delta = Some(v.parse().map_err(|_| bad(item))?),
                _ => return Err(bad(item)),
            }
        }
        Ok(p)
    }
}

/// Outcome of checking one inequality on one input.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub check: CheckName,
    pub lhs: Value,
    pub rhs: Value,
    pub outcome: Outcome,
    /// Coefficients of the character the check ran along, if any.
    pub character: Option<Vec<u64>>,
    pub params: Params,
}

impl BoundReport {
    pub fn new(
        check: CheckName,
        lhs: impl Into<Value>,
        rhs: impl Into<Value>,
        holds: bool,
    ) -> Self {
        BoundReport {
            check,
            lhs: lhs.into(),
            rhs: rhs.into(),
            outcome: Outcome::from_bool(holds),
            character: None,
            params: Params::default(),
        }
    }

    pub fn not_applicable(check: CheckName, reason_lhs: Value, reason_rhs: Value) -> Self {
        BoundReport {
            check,
            lhs: reason_lhs,
            rhs: reason_rhs,
            outcome: Outcome::NotApplicable,
            character: None,
            params: Params::default(),
        }
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_hard_failure(&self) -> bool {
        self.check.is_hard() && self.outcome == Outcome::Fails
    }

    pub fn along(mut self, coeffs: &[u64]) -> Self {
        self.character = Some(coeffs.to_vec());
        self
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }

    /// `a:b:c` form of the character coefficients, empty when absent.
    pub fn character_label(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        if let Some(c) = &self.character {
            for (i, a) in c.iter().enumerate() {
                if i > 0 {
                    out.push(':');
                }
                let _ = write!(out, "{a}");
            }
        }
        out
    }
}
