//! Ring descriptors shared by every value in the library.
//!
//! A [`RingSpec`] names the ambient ring: `nvars` variables `x1..xn` over the
//! rationals, either as plain polynomials or as power series represented
//! modulo a total-degree truncation bound.

use std::fmt;

/// Whether elements are polynomials or truncated power series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingMode {
    /// Exact polynomials in `x1..xn`.
    Polynomial,
    /// Power series stored modulo total degree `trunc`; every result is
    /// exact on all terms of total degree below `trunc`.
    Series { trunc: u32 },
}

/// Number of variables plus the ring mode. Every `Poly` and `Derivation`
/// carries one and binary operations require them to agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    nvars: usize,
    mode: RingMode,
}

impl RingSpec {
    /// The polynomial ring in `nvars` variables.
    pub fn polynomial(nvars: usize) -> Self {
        assert!(nvars >= 1, "ring needs at least one variable");
        RingSpec {
            nvars,
            mode: RingMode::Polynomial,
        }
    }

    /// The series ring in `nvars` variables truncated at total degree `trunc`.
    pub fn series(nvars: usize, trunc: u32) -> Self {
        assert!(nvars >= 1, "ring needs at least one variable");
        assert!(trunc >= 1, "series truncation order must be at least 1");
        RingSpec {
            nvars,
            mode: RingMode::Series { trunc },
        }
    }

    pub fn nvars(self) -> usize {
        self.nvars
    }

    pub fn mode(self) -> RingMode {
        self.mode
    }

    pub fn is_series(self) -> bool {
        matches!(self.mode, RingMode::Series { .. })
    }

    /// Truncation order in series mode, `None` for polynomials.
    pub fn truncation(self) -> Option<u32> {
        match self.mode {
            RingMode::Polynomial => None,
            RingMode::Series { trunc } => Some(trunc),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            RingMode::Polynomial => write!(f, "poly {}", self.nvars),
            RingMode::Series { trunc } => write!(f, "series {} trunc {}", self.nvars, trunc),
        }
    }
}
