//! Named degenerate candidates with growing `u`. Only quantum numbers are
//! stored; the flux is always solved for.

use crate::degeneracy::DegenerateCandidate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub candidate: DegenerateCandidate,
}

const fn preset(name: &'static str, m: i64, n: u32, m_prime: i64, n_prime: u32) -> Preset {
    Preset {
        name,
        candidate: DegenerateCandidate {
            m,
            n,
            m_prime,
            n_prime,
        },
    }
}

pub const TABLE: [Preset; 4] = [
    preset("row1", 1, 3, 6, 1),
    preset("row2", 1, 9, 23, 1),
    preset("row3", 1, 28, 80, 1),
    preset("row4", 1, 102, 308, 1),
];

/// Preset by 1-based row number.
pub fn row(index: usize) -> Option<&'static Preset> {
    index.checked_sub(1).and_then(|i| TABLE.get(i))
}

pub fn by_name(name: &str) -> Option<&'static Preset> {
    TABLE.iter().find(|p| p.name == name)
}
