// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::NdnError;

/// Hierarchical NDN name, e.g. `/xrpl/A/val/7`.
///
/// Always has at least one component and no component is empty or contains
/// a `/`. Ordering is component-wise lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Name {
    components: Vec<String>,
}

impl Name {
    pub fn new<I, S>(components: I) -> Result<Self, NdnError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let components: Vec<String> = components.into_iter().map(Into::into).collect();
        if components.is_empty() {
            return Err(NdnError::EmptyName);
        }
        for c in &components {
            if c.is_empty() || c.contains('/') {
                return Err(NdnError::BadComponent(c.clone()));
            }
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// A name always has at least one component.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_prefix_of(&self, other: &Name) -> bool {
        self.components.len() <= other.components.len()
            && self.components.iter().zip(&other.components).all(|(a, b)| a == b)
    }

    /// Returns a new name with `component` appended.
    pub fn child(&self, component: impl Into<String>) -> Result<Name, NdnError> {
        let mut components = self.components.clone();
        components.push(component.into());
        Name::new(components)
    }
}

impl FromStr for Name {
    type Err = NdnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.strip_prefix('/').unwrap_or(s);
        if trimmed.is_empty() {
            return Err(NdnError::EmptyName);
        }
        Name::new(trimmed.split('/'))
    }
}

impl TryFrom<String> for Name {
    type Error = NdnError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<Name> for String {
    fn from(value: Name) -> Self {
        value.to_string()
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            write!(f, "/{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Name {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(n("/xrpl/A/val/7").to_string(), "/xrpl/A/val/7");
        assert_eq!(n("/xrpl/A/val/7").len(), 4);
        assert_eq!(n("a/b"), n("/a/b"));
    }

    #[test]
    fn rejects_empty() {
        assert_eq!("/".parse::<Name>(), Err(NdnError::EmptyName));
        assert_eq!("".parse::<Name>(), Err(NdnError::EmptyName));
        assert!(matches!("/a//b".parse::<Name>(), Err(NdnError::BadComponent(_))));
        assert!(Name::new(Vec::<String>::new()).is_err());
        assert!(Name::new(["a/b"]).is_err());
    }

    #[test]
    fn prefix_relation() {
        assert!(n("/a").is_prefix_of(&n("/a/b")));
        assert!(n("/a/b").is_prefix_of(&n("/a/b")));
        assert!(!n("/a/b").is_prefix_of(&n("/a")));
        assert!(!n("/a/c").is_prefix_of(&n("/a/b/c")));
        // component-wise, not string-wise
        assert!(!n("/a/b").is_prefix_of(&n("/a/bc")));
    }
}
