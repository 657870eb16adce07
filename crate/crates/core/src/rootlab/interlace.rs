use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{compare, RootSet};
use crate::error::{Error, Result};

/// Expected arrangement of zeros. `z` is the polynomial under test, `x` the
/// first comparison set and `y` the second (shift patterns only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    /// `z_1 < x_1 < z_2 < x_2 < ⋯ < z_n < x_n`.
    AlternateSame,
    /// `z_1 < x_1 < z_2 < ⋯ < x_{n-1} < z_n`.
    AlternateDrop,
    /// `x_i < z_i < y_i` for `i < n` and `x_n < z_n`, with `deg y = n − 1`.
    RightShift,
    /// `z_1 < x_1` and `y_{i-1} < z_i < x_i` for `i ≥ 2`.
    LeftShift,
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::AlternateSame => "alternate-same",
            Pattern::AlternateDrop => "alternate-drop",
            Pattern::RightShift => "right-shift",
            Pattern::LeftShift => "left-shift",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Set {
    Z,
    X,
    Y,
}

impl Set {
    fn label(self) -> &'static str {
        match self {
            Set::Z => "z",
            Set::X => "x",
            Set::Y => "y",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterlaceVerdict {
    pub pattern: Pattern,
    pub holds: bool,
    /// Every strict inequality checked, as `"x_1 < z_2"`, with failures
    /// marked.
    pub witness: Vec<String>,
}

/// Checks the strict inequalities of `pattern` by exact interval separation.
pub fn interlace(pattern: Pattern, z: &RootSet, x: &RootSet, y: Option<&RootSet>) -> Result<InterlaceVerdict> {
    let n = z.len();
    let need_y = matches!(pattern, Pattern::RightShift | Pattern::LeftShift);
    let x_len = match pattern {
        Pattern::AlternateSame | Pattern::RightShift | Pattern::LeftShift => n,
        Pattern::AlternateDrop => n.saturating_sub(1),
    };
    let mut witness = Vec::new();
    let mut holds = true;
    if x.len() != x_len {
        holds = false;
        witness.push(format!("|z| = {n} needs |x| = {x_len}, got {}", x.len()));
    }
    if need_y {
        let y = y.ok_or_else(|| Error::Config(format!("{} needs a second comparison set", pattern.name())))?;
        if y.len() + 1 != n {
            holds = false;
            witness.push(format!("|z| = {n} needs |y| = {}, got {}", n.saturating_sub(1), y.len()));
        }
    }
    if !holds {
        return Ok(InterlaceVerdict {
            pattern,
            holds,
            witness,
        });
    }

    // pairs (left, right) that must satisfy left < right; indices 0-based
    let mut pairs: Vec<((Set, usize), (Set, usize))> = Vec::new();
    match pattern {
        Pattern::AlternateSame | Pattern::AlternateDrop => {
            let mut chain = Vec::new();
            for i in 0..n {
                chain.push((Set::Z, i));
                if i < x_len {
                    chain.push((Set::X, i));
                }
            }
            pairs.extend(chain.windows(2).map(|w| (w[0], w[1])));
        }
        Pattern::RightShift => {
            for i in 0..n {
                pairs.push(((Set::X, i), (Set::Z, i)));
                if i + 1 < n {
                    pairs.push(((Set::Z, i), (Set::Y, i)));
                }
            }
        }
        Pattern::LeftShift => {
            for i in 0..n {
                pairs.push(((Set::Z, i), (Set::X, i)));
                if i > 0 {
                    pairs.push(((Set::Y, i - 1), (Set::Z, i)));
                }
            }
        }
    }

    let pick = |s: Set| match s {
        Set::Z => z,
        Set::X => x,
        Set::Y => y.expect("checked above"),
    };
    for ((sa, i), (sb, j)) in pairs {
        let ord = compare(pick(sa), i, pick(sb), j)?;
        let ok = ord == Ordering::Less;
        holds &= ok;
        let rel = if ok { "<" } else { "NOT <" };
        witness.push(format!("{}_{} {rel} {}_{}", sa.label(), i + 1, sb.label(), j + 1));
    }
    Ok(InterlaceVerdict {
        pattern,
        holds,
        witness,
    })
}
