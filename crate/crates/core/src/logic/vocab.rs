//! Environment vocabulary: typed objects plus condition and action predicates.

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("object `{0}` declared more than once")]
    DuplicateObject(String),
    #[error("predicate `{0}` declared more than once")]
    DuplicatePredicate(String),
    #[error("predicate `{predicate}` uses category `{category}` which has no objects")]
    EmptyCategory { predicate: String, category: String },
}

/// A predicate signature: name plus one category per parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub name: String,
    pub params: Vec<String>,
}

impl Signature {
    pub fn new(
        name: impl Into<String>,
        params: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        Self {
            name: name.into(),
            params: params.into_iter().map(Into::into).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.params.is_empty() {
            return write!(f, "{}", self.name);
        }
        write!(f, "{}(", self.name)?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "<{p}>")?;
        }
        write!(f, ")")
    }
}

/// The triple of objects, condition predicates and action predicates.
///
/// Categories are flat labels; every object belongs to exactly one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    objects: IndexMap<String, String>,
    conditions: IndexMap<String, Signature>,
    actions: IndexMap<String, Signature>,
}

impl Vocabulary {
    pub fn new(
        objects: impl IntoIterator<Item = (String, String)>,
        conditions: impl IntoIterator<Item = Signature>,
        actions: impl IntoIterator<Item = Signature>,
    ) -> Result<Self, VocabError> {
        let mut vocab = Vocabulary::default();
        for (name, category) in objects {
            if vocab.objects.insert(name.clone(), category).is_some() {
                return Err(VocabError::DuplicateObject(name));
            }
        }
        for sig in conditions {
            vocab.check_signature(&sig)?;
            if vocab.conditions.contains_key(&sig.name) {
                return Err(VocabError::DuplicatePredicate(sig.name));
            }
            vocab.conditions.insert(sig.name.clone(), sig);
        }
        for sig in actions {
            vocab.check_signature(&sig)?;
            if vocab.actions.contains_key(&sig.name) {
                return Err(VocabError::DuplicatePredicate(sig.name));
            }
            vocab.actions.insert(sig.name.clone(), sig);
        }
        Ok(vocab)
    }

    fn check_signature(&self, sig: &Signature) -> Result<(), VocabError> {
        for category in &sig.params {
            if !self.objects.values().any(|c| c == category) {
                return Err(VocabError::EmptyCategory {
                    predicate: sig.name.clone(),
                    category: category.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn category_of(&self, object: &str) -> Option<&str> {
        self.objects.get(object).map(String::as_str)
    }

    pub fn condition(&self, name: &str) -> Option<&Signature> {
        self.conditions.get(name)
    }

    pub fn action(&self, name: &str) -> Option<&Signature> {
        self.actions.get(name)
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, &str)> {
        self.objects.iter().map(|(o, c)| (o.as_str(), c.as_str()))
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// Objects of `category` in declaration order.
    pub fn objects_in<'a>(&'a self, category: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.objects
            .iter()
            .filter(move |(_, c)| c.as_str() == category)
            .map(|(o, _)| o.as_str())
    }

    /// Distinct categories in order of first use.
    pub fn categories(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for c in self.objects.values() {
            if !seen.contains(&c.as_str()) {
                seen.push(c);
            }
        }
        seen
    }

    pub fn condition_predicates(&self) -> impl Iterator<Item = &Signature> {
        self.conditions.values()
    }

    pub fn action_predicates(&self) -> impl Iterator<Item = &Signature> {
        self.actions.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn rejects_duplicate_object() {
        let err = Vocabulary::new(objs(&[("A", "x"), ("A", "y")]), [], []).unwrap_err();
        assert_eq!(err, VocabError::DuplicateObject("A".into()));
    }

    #[test]
    fn rejects_category_without_objects() {
        let err =
            Vocabulary::new(objs(&[("A", "x")]), [Signature::new("P", ["y"])], []).unwrap_err();
        assert!(matches!(err, VocabError::EmptyCategory { .. }));
    }

    #[test]
    fn lists_objects_by_category() {
        let v = Vocabulary::new(
            objs(&[("A", "x"), ("B", "y"), ("C", "x")]),
            [Signature::new("P", ["x"])],
            [],
        )
        .unwrap();
        assert_eq!(v.objects_in("x").collect::<Vec<_>>(), ["A", "C"]);
        assert_eq!(v.categories(), ["x", "y"]);
        assert_eq!(v.condition("P").unwrap().to_string(), "P(<x>)");
    }
}
