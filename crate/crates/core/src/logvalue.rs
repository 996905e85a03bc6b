//! Log-space carrier for probabilities and expectations.

use serde::{Deserialize, Serialize};

/// Natural log of a non-negative quantity, with an explicit exact-zero case.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum LogValue {
    Zero,
    Ln(f64),
}

impl LogValue {
    pub const ONE: LogValue = LogValue::Ln(0.0);

    /// `-inf` maps to [`LogValue::Zero`].
    #[inline]
    pub fn from_ln(ln: f64) -> Self {
        if ln == f64::NEG_INFINITY {
            LogValue::Zero
        } else {
            LogValue::Ln(ln)
        }
    }

    /// `-inf` for zero.
    #[inline]
    pub fn ln(self) -> f64 {
        match self {
            LogValue::Zero => f64::NEG_INFINITY,
            LogValue::Ln(x) => x,
        }
    }

    #[inline]
    pub fn exp(self) -> f64 {
        self.ln().exp()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        matches!(self, LogValue::Zero)
    }

    pub fn pow(self, e: u32) -> LogValue {
        match self {
            LogValue::Zero if e == 0 => LogValue::ONE,
            LogValue::Zero => LogValue::Zero,
            LogValue::Ln(a) => LogValue::Ln(a * e as f64),
        }
    }
}

impl std::ops::Mul for LogValue {
    type Output = LogValue;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: LogValue) -> LogValue {
        match (self, other) {
            (LogValue::Ln(a), LogValue::Ln(b)) => LogValue::Ln(a + b),
            _ => LogValue::Zero,
        }
    }
}

/// Dividing by zero is a caller bug and panics.
impl std::ops::Div for LogValue {
    type Output = LogValue;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, other: LogValue) -> LogValue {
        match (self, other) {
            (_, LogValue::Zero) => panic!("LogValue division by zero"),
            (LogValue::Zero, _) => LogValue::Zero,
            (LogValue::Ln(a), LogValue::Ln(b)) => LogValue::Ln(a - b),
        }
    }
}

/// Max-shifted log-sum-exp.
pub fn log_sum(values: impl IntoIterator<Item = LogValue>) -> LogValue {
    let lns: Vec<f64> = values
        .into_iter()
        .filter_map(|v| match v {
            LogValue::Ln(x) => Some(x),
            LogValue::Zero => None,
        })
        .collect();
    let Some(max) = lns.iter().copied().reduce(f64::max) else {
        return LogValue::Zero;
    };
    let s: f64 = lns.iter().map(|x| (x - max).exp()).sum();
    LogValue::Ln(max + s.ln())
}
