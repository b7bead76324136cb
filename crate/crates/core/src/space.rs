use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible point index `n + m`. Monomials pack one 4-bit slot per
/// top index.
pub const MAX_POINTS: u32 = 15;

/// Which cohomology ring of the Fadell-Neuwirth bundle `E -> B` is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Space {
    /// `E = F(R^k, n+m)`.
    TotalE,
    /// `B = F(R^k, m)`.
    BaseB,
    /// `E x_B E`, the fibre product.
    FibreproductEbe,
    /// `X = F(R^k - O_m, n)`.
    FibreX,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::TotalE => "E",
            Space::BaseB => "B",
            Space::FibreproductEbe => "EBE",
            Space::FibreX => "X",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e" | "total" | "total_e" => Ok(Space::TotalE),
            "b" | "base" | "base_b" => Ok(Space::BaseB),
            "ebe" | "fibreproduct" | "fibreproduct_ebe" | "fiber-product" | "fibre-product" => {
                Ok(Space::FibreproductEbe)
            }
            "x" | "fibre" | "fiber" | "fibre_x" => Ok(Space::FibreX),
            other => Err(Error::InvalidSpec(format!("unknown space `{other}`"))),
        }
    }
}

/// Parameters fixing one ring: `n` robots, `m` obstacles, ambient dimension `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    n: u32,
    m: u32,
    k: u32,
    space: Space,
}

impl SpaceSpec {
    pub fn new(n: u32, m: u32, k: u32, space: Space) -> Result<Self> {
        if k.is_multiple_of(2) {
            return Err(Error::UnsupportedDimension(k));
        }
        if k < 3 {
            return Err(Error::InvalidSpec(format!("k must be at least 3 (got {k})")));
        }
        if n < 1 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if m < 1 {
            return Err(Error::InvalidSpec("m must be at least 1".into()));
        }
        if n + m > MAX_POINTS {
            return Err(Error::InvalidSpec(format!(
                "n + m = {} exceeds the supported maximum {MAX_POINTS}",
                n + m
            )));
        }
        Ok(SpaceSpec { n, m, k, space })
    }

    /// Shorthand for the fibre product ring, the one the complexity bounds live in.
    pub fn fibre_product(n: u32, m: u32, k: u32) -> Result<Self> {
        Self::new(n, m, k, Space::FibreproductEbe)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Total number of points `n + m`.
    pub fn points(&self) -> u32 {
        self.n + self.m
    }

    /// Same parameters, different ring.
    pub fn with_space(&self, space: Space) -> SpaceSpec {
        SpaceSpec { space, ..*self }
    }

    /// Cohomological degree of a single generator.
    pub fn generator_degree(&self) -> u32 {
        self.k - 1
    }

    pub(crate) fn has_base(&self) -> bool {
        self.space != Space::FibreX
    }

    pub(crate) fn has_fibre(&self) -> bool {
        self.space != Space::BaseB
    }

    pub(crate) fn has_primed(&self) -> bool {
        self.space == Space::FibreproductEbe
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, m={}, k={})", self.space, self.n, self.m, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_small_k() {
        assert_eq!(SpaceSpec::fibre_product(1, 2, 4), Err(Error::UnsupportedDimension(4)));
        assert!(matches!(SpaceSpec::fibre_product(1, 2, 1), Err(Error::InvalidSpec(_))));
        assert!(SpaceSpec::fibre_product(1, 2, 5).is_ok());
    }

    #[test]
    fn rejects_degenerate_counts() {
        assert!(SpaceSpec::fibre_product(0, 2, 3).is_err());
        assert!(SpaceSpec::fibre_product(1, 0, 3).is_err());
        assert!(SpaceSpec::fibre_product(10, 6, 3).is_err());
        assert!(SpaceSpec::fibre_product(10, 5, 3).is_ok());
    }

    #[test]
    fn space_names_parse() {
        for s in [Space::TotalE, Space::BaseB, Space::FibreproductEbe, Space::FibreX] {
            assert_eq!(s.name().parse::<Space>().unwrap(), s);
        }
    }
}
