//! Feedback bit budgets for the dedicated-channel and broadcast schemes.
//!
//! With dedicated feedback every relay gets its own scheme index, a
//! selection flag and either the gain sum (TDD) or its beamforming weight
//! (FDD), plus one scheme index for the source. With broadcast feedback one
//! scheme index doubles as the selection result.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FeedbackScheme {
    General,
    Improved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Duplex {
    Tdd,
    Fdd,
}

impl FeedbackScheme {
    pub const ALL: [FeedbackScheme; 2] = [Self::General, Self::Improved];

    pub fn name(self) -> &'static str {
        match self {
            Self::General => "general",
            Self::Improved => "improved",
        }
    }
}

impl Duplex {
    pub const ALL: [Duplex; 2] = [Self::Tdd, Self::Fdd];

    pub fn name(self) -> &'static str {
        match self {
            Self::Tdd => "tdd",
            Self::Fdd => "fdd",
        }
    }
}

impl fmt::Display for FeedbackScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Duplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeedbackScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown feedback scheme '{s}'")))
    }
}

impl FromStr for Duplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown duplex mode '{s}'")))
    }
}

/// Field widths in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldWidths {
    /// Per-relay selection flag.
    pub flag: u32,
    /// Sum of gain factors, a real number.
    pub gain_sum: u32,
    /// Beamforming weight, magnitude and phase.
    pub weight: u32,
}

impl Default for FieldWidths {
    fn default() -> Self {
        Self {
            flag: 1,
            gain_sum: 8,
            weight: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignalingBudget {
    pub scheme: FeedbackScheme,
    pub duplex: Duplex,
    pub num_relays: u32,
    pub levels: u32,
    pub ms_bits: u32,
    pub total_bits: u32,
}

/// `⌈log2 L⌉`; a single scheme needs no index.
pub fn ms_index_bits(levels: u32) -> u32 {
    assert!(levels >= 1, "at least one scheme");
    levels.next_power_of_two().trailing_zeros()
}

pub fn signaling_budget(
    scheme: FeedbackScheme,
    duplex: Duplex,
    num_relays: u32,
    levels: u32,
    widths: FieldWidths,
) -> SignalingBudget {
    assert!(num_relays >= 1, "at least one relay");
    let ms = ms_index_bits(levels);
    let n = num_relays;
    let total_bits = match (scheme, duplex) {
        (FeedbackScheme::General, Duplex::Tdd) => n * (ms + widths.flag + widths.gain_sum) + ms,
        (FeedbackScheme::General, Duplex::Fdd) => n * (ms + widths.flag + widths.weight) + ms,
        (FeedbackScheme::Improved, Duplex::Tdd) => ms + widths.gain_sum,
        (FeedbackScheme::Improved, Duplex::Fdd) => ms + n * widths.weight,
    };
    SignalingBudget {
        scheme,
        duplex,
        num_relays,
        levels,
        ms_bits: ms,
        total_bits,
    }
}

/// Total feedback bits with the default field widths.
pub fn signaling_bits(scheme: FeedbackScheme, duplex: Duplex, num_relays: u32, levels: u32) -> u32 {
    signaling_budget(scheme, duplex, num_relays, levels, FieldWidths::default()).total_bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use FeedbackScheme::*;

    #[test]
    fn table_examples() {
        assert_eq!(signaling_bits(General, Duplex::Tdd, 5, 4), 57);
        assert_eq!(signaling_bits(Improved, Duplex::Tdd, 5, 4), 10);
        assert_eq!(signaling_bits(Improved, Duplex::Fdd, 1, 1), 16);
    }

    #[test]
    fn index_bits() {
        let expect = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)];
        for (l, b) in expect {
            assert_eq!(ms_index_bits(l), b, "L={l}");
        }
    }

    #[test]
    fn improved_never_costs_more() {
        for n in 1..=64 {
            for l in 1..=16 {
                for d in Duplex::ALL {
                    assert!(signaling_bits(Improved, d, n, l) <= signaling_bits(General, d, n, l));
                }
                assert_eq!(
                    signaling_bits(Improved, Duplex::Tdd, n, l),
                    signaling_bits(Improved, Duplex::Tdd, 1, l)
                );
            }
        }
    }

    #[test]
    fn custom_widths() {
        let w = FieldWidths {
            flag: 2,
            gain_sum: 10,
            weight: 20,
        };
        assert_eq!(
            signaling_budget(General, Duplex::Tdd, 3, 4, w).total_bits,
            3 * 14 + 2
        );
        assert_eq!(
            signaling_budget(Improved, Duplex::Fdd, 3, 4, w).total_bits,
            60 + 2
        );
    }

    #[test]
    fn parse_names() {
        assert_eq!("GENERAL".parse::<FeedbackScheme>().unwrap(), General);
        assert_eq!("fdd".parse::<Duplex>().unwrap(), Duplex::Fdd);
        assert!("half".parse::<Duplex>().is_err());
    }
}
