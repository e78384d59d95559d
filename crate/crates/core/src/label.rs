//! Opaque labels for ordinary and Brauer characters.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("label must be non-empty")]
    Empty,
}

macro_rules! label_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Result<Self, LabelError> {
                let id = id.into();
                if id.is_empty() {
                    return Err(LabelError::Empty);
                }
                Ok(Self(id))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl std::str::FromStr for $name {
            type Err = LabelError;

            fn from_str(s: &str) -> Result<Self, LabelError> {
                Self::new(s)
            }
        }
    };
}

label_type! {
    /// Label of an ordinary irreducible character, unique within its level.
    CharLabel
}

label_type! {
    /// Label of an irreducible Brauer character, unique within its level.
    BrauerLabel
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty() {
        assert_eq!(CharLabel::new(""), Err(LabelError::Empty));
        assert!(BrauerLabel::new("phi").is_ok());
    }

    #[test]
    fn orders_lexicographically() {
        let a = CharLabel::new("chi3").unwrap();
        let b = CharLabel::new("sgn").unwrap();
        assert!(a < b);
    }
}
