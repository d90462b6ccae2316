//! Name-keyed registries of interchangeable algorithm implementations.
//!
//! Each family of alternative routes (vector-field powers, path kernels,
//! 3-Lie checks) exposes a trait; implementations register under a short
//! name and are selected at runtime, typically from a CLI flag.

use crate::error::{Error, Result};

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    /// Adds an implementation; a later registration under the same name
    /// replaces the earlier one.
    pub fn register(&mut self, name: &'static str, imp: Box<T>) -> &mut Self {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = imp,
            None => self.entries.push((name, imp)),
        }
        self
    }

    pub fn with(mut self, name: &'static str, imp: Box<T>) -> Self {
        self.register(name, imp);
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries.iter().find(|(n, _)| *n == name).map(|(_, imp)| imp.as_ref()).ok_or_else(|| {
            Error::UnknownStrategy { kind: self.kind, name: name.to_string(), available: self.names().join(", ") }
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &T)> {
        self.entries.iter().map(|(n, imp)| (*n, imp.as_ref()))
    }

    pub fn kind(&self) -> &'static str {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter {
        fn greet(&self) -> String;
    }

    struct Plain;
    struct Loud;

    impl Greeter for Plain {
        fn greet(&self) -> String {
            "hi".into()
        }
    }

    impl Greeter for Loud {
        fn greet(&self) -> String {
            "HI".into()
        }
    }

    #[test]
    fn lookup_by_name() {
        let reg: Registry<dyn Greeter> =
            Registry::<dyn Greeter>::new("greeter").with("plain", Box::new(Plain)).with("loud", Box::new(Loud));
        assert_eq!(reg.get("loud").unwrap().greet(), "HI");
        assert_eq!(reg.names(), ["plain", "loud"]);
        let err = reg.get("quiet").err().unwrap().to_string();
        assert!(err.contains("plain, loud"), "{err}");
    }
}
