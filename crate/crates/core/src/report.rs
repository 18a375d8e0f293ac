//! Machine readable law-check results.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed law instance with the inputs that exposed it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
    pub expected: String,
    pub got: String,
}

impl Violation {
    pub fn new(
        law: impl Into<String>,
        witness: impl Into<String>,
        expected: impl fmt::Debug,
        got: impl fmt::Debug,
    ) -> Violation {
        Violation {
            law: law.into(),
            witness: witness.into(),
            expected: format!("{expected:?}"),
            got: format!("{got:?}"),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: witness {} expected {} got {}",
            self.law, self.witness, self.expected, self.got
        )
    }
}

/// Compare two results, recording a violation if they differ.
pub(crate) fn expect_eq<T: PartialEq + fmt::Debug, E: fmt::Debug>(
    out: &mut Vec<Violation>,
    law: &str,
    witness: impl FnOnce() -> String,
    expected: Result<T, E>,
    got: Result<T, E>,
) {
    match (&expected, &got) {
        (Ok(a), Ok(b)) if a == b => {}
        _ => out.push(Violation {
            law: law.to_string(),
            witness: witness(),
            expected: format!("{expected:?}"),
            got: format!("{got:?}"),
        }),
    }
}
