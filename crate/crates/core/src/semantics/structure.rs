use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::syntax::Signature;

use super::SemanticsError;

/// Symbol tables shared by every structure over one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub constants: Vec<String>,
    pub functions: Vec<(String, usize)>,
    pub predicates: Vec<(String, usize)>,
    constant_index: BTreeMap<String, usize>,
    function_index: BTreeMap<String, usize>,
    predicate_index: BTreeMap<String, usize>,
}

impl Layout {
    pub fn new(sig: &Signature) -> Layout {
        let constants: Vec<String> = sig.constants.iter().cloned().collect();
        let functions: Vec<(String, usize)> =
            sig.functions.iter().map(|(n, &a)| (n.clone(), a)).collect();
        let predicates: Vec<(String, usize)> =
            sig.predicates.iter().map(|(n, &a)| (n.clone(), a)).collect();
        Layout {
            constant_index: index(constants.iter()),
            function_index: index(functions.iter().map(|(n, _)| n)),
            predicate_index: index(predicates.iter().map(|(n, _)| n)),
            constants,
            functions,
            predicates,
        }
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constant_index.get(name).copied()
    }

    pub fn function(&self, name: &str) -> Option<usize> {
        self.function_index.get(name).copied()
    }

    pub fn predicate(&self, name: &str) -> Option<usize> {
        self.predicate_index.get(name).copied()
    }

    pub fn signature(&self) -> Signature {
        Signature {
            predicates: self.predicates.iter().cloned().collect(),
            functions: self.functions.iter().cloned().collect(),
            constants: self.constants.iter().cloned().collect(),
        }
    }
}

fn index<'a>(names: impl Iterator<Item = &'a String>) -> BTreeMap<String, usize> {
    names.enumerate().map(|(i, n)| (n.clone(), i)).collect()
}

/// Number of argument tuples of the given arity over `n` elements.
pub(crate) fn tuple_count(n: usize, arity: usize) -> usize {
    n.pow(arity as u32)
}

/// Position of `args` in a table. The first argument is the least
/// significant digit.
pub(crate) fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().rev().fold(0, |acc, &a| acc * n + a)
}

pub(crate) fn tuple_at(n: usize, arity: usize, mut index: usize) -> Vec<usize> {
    (0..arity)
        .map(|_| {
            let d = index % n;
            index /= n;
            d
        })
        .collect()
}

/// A finite structure with domain `0..domain_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub(crate) layout: Arc<Layout>,
    pub(crate) domain_size: usize,
    pub(crate) constants: Vec<usize>,
    /// One table per function, indexed by [`tuple_index`].
    pub(crate) functions: Vec<Vec<usize>>,
    /// One truth table per predicate, indexed by [`tuple_index`].
    pub(crate) predicates: Vec<Vec<bool>>,
}

impl Structure {
    /// Every constant and function value 0, every predicate empty.
    pub fn new(sig: &Signature, domain_size: usize) -> Structure {
        Structure::with_layout(Arc::new(Layout::new(sig)), domain_size)
    }

    pub fn with_layout(layout: Arc<Layout>, domain_size: usize) -> Structure {
        assert!(domain_size >= 1, "domains are non-empty");
        let n = domain_size;
        Structure {
            constants: vec![0; layout.constants.len()],
            functions: layout
                .functions
                .iter()
                .map(|&(_, a)| vec![0; tuple_count(n, a)])
                .collect(),
            predicates: layout
                .predicates
                .iter()
                .map(|&(_, a)| vec![false; tuple_count(n, a)])
                .collect(),
            layout,
            domain_size,
        }
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn signature(&self) -> Signature {
        self.layout.signature()
    }

    fn element(&self, e: usize) -> Result<usize, SemanticsError> {
        if e < self.domain_size {
            Ok(e)
        } else {
            Err(SemanticsError::Element {
                element: e,
                domain_size: self.domain_size,
            })
        }
    }

    fn arity_check(&self, name: &str, want: usize, got: usize) -> Result<(), SemanticsError> {
        if want == got {
            Ok(())
        } else {
            Err(SemanticsError::Arity {
                name: name.to_string(),
                expected: want,
                found: got,
            })
        }
    }

    pub fn set_constant(&mut self, name: &str, e: usize) -> Result<(), SemanticsError> {
        let i = self.layout.constant(name).ok_or_else(|| uninterpreted(name))?;
        self.constants[i] = self.element(e)?;
        Ok(())
    }

    pub fn set_function(
        &mut self,
        name: &str,
        args: &[usize],
        value: usize,
    ) -> Result<(), SemanticsError> {
        let i = self.layout.function(name).ok_or_else(|| uninterpreted(name))?;
        self.arity_check(name, self.layout.functions[i].1, args.len())?;
        for &a in args {
            self.element(a)?;
        }
        let value = self.element(value)?;
        let slot = tuple_index(self.domain_size, args);
        self.functions[i][slot] = value;
        Ok(())
    }

    pub fn set_predicate(
        &mut self,
        name: &str,
        args: &[usize],
        holds: bool,
    ) -> Result<(), SemanticsError> {
        let i = self.layout.predicate(name).ok_or_else(|| uninterpreted(name))?;
        self.arity_check(name, self.layout.predicates[i].1, args.len())?;
        for &a in args {
            self.element(a)?;
        }
        let slot = tuple_index(self.domain_size, args);
        self.predicates[i][slot] = holds;
        Ok(())
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.layout.constant(name).map(|i| self.constants[i])
    }

    pub fn apply(&self, name: &str, args: &[usize]) -> Option<usize> {
        let i = self.layout.function(name)?;
        (self.layout.functions[i].1 == args.len() && args.iter().all(|&a| a < self.domain_size))
            .then(|| self.functions[i][tuple_index(self.domain_size, args)])
    }

    pub fn holds(&self, name: &str, args: &[usize]) -> Option<bool> {
        let i = self.layout.predicate(name)?;
        (self.layout.predicates[i].1 == args.len() && args.iter().all(|&a| a < self.domain_size))
            .then(|| self.predicates[i][tuple_index(self.domain_size, args)])
    }

    /// Tuples in the extension of a predicate, in table order.
    pub fn extension(&self, name: &str) -> Option<Vec<Vec<usize>>> {
        let i = self.layout.predicate(name)?;
        let arity = self.layout.predicates[i].1;
        Some(
            self.predicates[i]
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(k, _)| tuple_at(self.domain_size, arity, k))
                .collect(),
        )
    }
}

fn uninterpreted(name: &str) -> SemanticsError {
    SemanticsError::Uninterpreted(name.to_string())
}

/// `{"domain_size": 1, "constants": {"s": 0}, "functions": {"f": [[0, 0]]},
/// "predicates": {"H": [], "M": [[0]]}}`. A function entry lists the
/// arguments followed by the value.
impl Serialize for Structure {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Constants<'a>(&'a Structure);
        struct Functions<'a>(&'a Structure);
        struct Predicates<'a>(&'a Structure);

        impl Serialize for Constants<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let st = self.0;
                let mut map = s.serialize_map(Some(st.constants.len()))?;
                for (name, value) in st.layout.constants.iter().zip(&st.constants) {
                    map.serialize_entry(name, value)?;
                }
                map.end()
            }
        }
        impl Serialize for Functions<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let st = self.0;
                let mut map = s.serialize_map(Some(st.functions.len()))?;
                for ((name, arity), table) in st.layout.functions.iter().zip(&st.functions) {
                    let rows: Vec<Vec<usize>> = table
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| {
                            let mut row = tuple_at(st.domain_size, *arity, k);
                            row.push(v);
                            row
                        })
                        .collect();
                    map.serialize_entry(name, &rows)?;
                }
                map.end()
            }
        }
        impl Serialize for Predicates<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let st = self.0;
                let mut map = s.serialize_map(Some(st.predicates.len()))?;
                for (name, _) in &st.layout.predicates {
                    map.serialize_entry(name, &st.extension(name).unwrap_or_default())?;
                }
                map.end()
            }
        }

        let mut st = serializer.serialize_struct("Structure", 4)?;
        st.serialize_field("domain_size", &self.domain_size)?;
        st.serialize_field("constants", &Constants(self))?;
        st.serialize_field("functions", &Functions(self))?;
        st.serialize_field("predicates", &Predicates(self))?;
        st.end()
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.domain_size;
        let domain: Vec<String> = (0..n).map(|e| e.to_string()).collect();
        writeln!(f, "domain: {{{}}}", domain.join(", "))?;
        for (name, v) in self.layout.constants.iter().zip(&self.constants) {
            writeln!(f, "{name} = {v}")?;
        }
        for ((name, arity), table) in self.layout.functions.iter().zip(&self.functions) {
            for (k, v) in table.iter().enumerate() {
                let args: Vec<String> =
                    tuple_at(n, *arity, k).iter().map(|a| a.to_string()).collect();
                writeln!(f, "{name}({}) = {v}", args.join(", "))?;
            }
        }
        for (name, arity) in &self.layout.predicates {
            let ext = self.extension(name).unwrap_or_default();
            let tuples: Vec<String> = ext
                .iter()
                .map(|t| {
                    let items: Vec<String> = t.iter().map(|a| a.to_string()).collect();
                    if *arity == 1 {
                        items.join("")
                    } else {
                        format!("({})", items.join(", "))
                    }
                })
                .collect();
            writeln!(f, "{name} = {{{}}}", tuples.join(", "))?;
        }
        Ok(())
    }
}
