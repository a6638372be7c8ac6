use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Exponent;

/// Monomial orders used by the Gröbner machinery.
///
/// `Elimination(k)` is the block order that compares the first `k`
/// variables by grevlex and breaks ties with grevlex on the remaining
/// ones. Any monomial involving the first block is larger than every
/// monomial free of it, so a Gröbner basis for this order eliminates the
/// block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Grlex,
    Grevlex,
    Elimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        let (a, b) = (a.as_slice(), b.as_slice());
        match *self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Grlex => degree(a).cmp(&degree(b)).then_with(|| lex(a, b)),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}
