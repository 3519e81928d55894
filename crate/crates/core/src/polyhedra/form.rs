//! Affine-linear forms and halfspaces over the rationals.

use crate::rat::Rat;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// The affine-linear function `coeffs . x + constant`.
///
/// Normalized forms have coprime integer entries. Two normalizations exist:
/// a positive rescale that preserves orientation (halfspaces), and a fully
/// canonical one whose first nonzero coefficient is positive (hyperplane and
/// component identities).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Self {
        AffineForm { coeffs, constant }
    }

    pub fn from_ints(coeffs: &[i64], constant: i64) -> Self {
        AffineForm {
            coeffs: coeffs
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
            constant: Rat::from_integer(BigInt::from(constant)),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        debug_assert_eq!(point.len(), self.coeffs.len());
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(point) {
            if !c.is_zero() && !x.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    /// Value of the linear part only (used on ray directions).
    pub fn eval_linear(&self, direction: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (c, x) in self.coeffs.iter().zip(direction) {
            acc += c * x;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    /// Rescales by the unique positive rational making all entries coprime
    /// integers. Orientation is preserved.
    pub fn normalize_scale(&self) -> AffineForm {
        let scale = coprime_scale(self.coeffs.iter().chain(std::iter::once(&self.constant)));
        match scale {
            None => self.clone(),
            Some(s) => AffineForm {
                coeffs: self.coeffs.iter().map(|c| c * &s).collect(),
                constant: &self.constant * &s,
            },
        }
    }

    /// Canonical representative of the hyperplane `self = 0`: coprime integer
    /// entries with the first nonzero coefficient positive (the constant
    /// decides the sign when all coefficients vanish).
    pub fn canonical_hyperplane(&self) -> AffineForm {
        let scaled = self.normalize_scale();
        let lead = scaled
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .unwrap_or(&scaled.constant);
        if lead.is_negative() {
            AffineForm {
                coeffs: scaled.coeffs.iter().map(|c| -c).collect(),
                constant: -scaled.constant,
            }
        } else {
            scaled
        }
    }

    /// `true` when the form is `x_j = 0` for some coordinate, up to scale.
    pub fn is_coordinate(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn negated(&self) -> AffineForm {
        AffineForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -self.constant.clone(),
        }
    }
}

/// Positive rational `s` such that scaling by `s` yields coprime integers;
/// `None` for the zero form.
fn coprime_scale<'a>(entries: impl Iterator<Item = &'a Rat>) -> Option<Rat> {
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    let mut any = false;
    for e in entries {
        if e.is_zero() {
            continue;
        }
        any = true;
        den_lcm = den_lcm.lcm(e.denom());
        num_gcd = num_gcd.gcd(e.numer());
    }
    if !any {
        return None;
    }
    Some(Rat::new(den_lcm, num_gcd))
}

/// How a form constrains a point: `form(x) sense 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sense {
    /// `<= 0`
    Le,
    /// `< 0`
    Lt,
    /// `= 0`
    Eq,
}

impl Sense {
    pub fn satisfied(self, value: &Rat) -> bool {
        match self {
            Sense::Le => !value.is_positive(),
            Sense::Lt => value.is_negative(),
            Sense::Eq => value.is_zero(),
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Sense::Lt)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub form: AffineForm,
    pub sense: Sense,
}

impl HalfSpace {
    pub fn le(form: AffineForm) -> Self {
        HalfSpace {
            form: form.normalize_scale(),
            sense: Sense::Le,
        }
    }

    pub fn lt(form: AffineForm) -> Self {
        HalfSpace {
            form: form.normalize_scale(),
            sense: Sense::Lt,
        }
    }

    pub fn eq(form: AffineForm) -> Self {
        HalfSpace {
            form: form.normalize_scale(),
            sense: Sense::Eq,
        }
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.sense.satisfied(&self.form.eval(point))
    }

    /// The closed counterpart (strictness dropped; equality kept).
    pub fn closed(&self) -> HalfSpace {
        let sense = match self.sense {
            Sense::Lt => Sense::Le,
            s => s,
        };
        HalfSpace {
            form: self.form.clone(),
            sense,
        }
    }
}

/// Halfspaces `lo_j <= x_j <= hi_j` of a closed box.
pub fn box_halfspaces(lo: &[Rat], hi: &[Rat]) -> Vec<HalfSpace> {
    let dim = lo.len();
    let mut out = Vec::with_capacity(2 * dim);
    for j in 0..dim {
        let mut low = vec![Rat::zero(); dim];
        low[j] = -Rat::one();
        out.push(HalfSpace::le(AffineForm::new(low, lo[j].clone())));
        let mut high = vec![Rat::zero(); dim];
        high[j] = Rat::one();
        out.push(HalfSpace::le(AffineForm::new(high, -hi[j].clone())));
    }
    out
}
