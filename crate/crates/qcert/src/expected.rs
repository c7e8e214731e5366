//! Claimed outcomes as data: positive-definiteness ranges, failure windows
//! and pinned values. Reports compare computed outcomes against this table,
//! so a run certifies "matches the claim" rather than "is PD".

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::pohozaev4::Family;

const RAW: &str = include_str!("../data/expected.json");

#[derive(Clone, Debug, Deserialize)]
pub struct FamilyClaim {
    /// Inclusive n range on which every admissible s is claimed PD.
    pub pd: (i64, i64),
    /// The s at which indefiniteness is claimed beyond the PD range.
    pub fail_s: i64,
    /// Inclusive n window on which the failure is certified.
    pub fail_window: (i64, i64),
}

#[derive(Clone, Debug, Deserialize)]
pub struct NoncompactClaim {
    pub window: (i64, i64),
    pub n52_threshold: i64,
    pub k_plus_m_range: (i64, i64),
}

#[derive(Clone, Debug, Deserialize)]
pub struct DefinitenessSuite {
    pub random_matrices: usize,
    pub max_dim: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Expected {
    pub q4: BTreeMap<String, FamilyClaim>,
    pub q6: BTreeMap<String, FamilyClaim>,
    pub pinned_q4_d_n8_s2: String,
    pub linsys_max_n: i64,
    pub moment_recurrence_n: (i64, i64),
    pub radial_constants_max_n: i64,
    pub noncompact: NoncompactClaim,
    pub definiteness: DefinitenessSuite,
}

/// The claimed outcome for one (family, n, s) matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    PositiveDefinite,
    NotPositiveDefinite,
    /// No statement; the outcome is recorded as an observation.
    None,
}

impl Expected {
    pub fn get() -> &'static Expected {
        static CELL: OnceLock<Expected> = OnceLock::new();
        CELL.get_or_init(|| serde_json::from_str(RAW).expect("bundled expectation table parses"))
    }

    /// Claims for order 4 or 6.
    pub fn family(&self, order_shift: i64, family: Family) -> &FamilyClaim {
        let table = if order_shift == 4 { &self.q4 } else { &self.q6 };
        &table[&family.to_string()]
    }

    pub fn claim(&self, order_shift: i64, family: Family, n: i64, s: i64) -> Claim {
        let c = self.family(order_shift, family);
        if (c.pd.0..=c.pd.1).contains(&n) {
            Claim::PositiveDefinite
        } else if n > c.pd.1 && s == c.fail_s {
            Claim::NotPositiveDefinite
        } else {
            Claim::None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_loads_and_windows_follow_pd_ranges() {
        let e = Expected::get();
        for shift in [4, 6] {
            for fam in Family::ALL {
                let c = e.family(shift, fam);
                assert_eq!(c.fail_window.0, c.pd.1 + 1);
            }
        }
        assert_eq!(e.claim(4, Family::D, 25, 2), Claim::NotPositiveDefinite);
        assert_eq!(e.claim(4, Family::D, 25, 3), Claim::None);
        assert_eq!(e.claim(6, Family::H, 33, 5), Claim::PositiveDefinite);
    }
}
