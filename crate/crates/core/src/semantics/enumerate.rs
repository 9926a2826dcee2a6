use std::sync::Arc;

use crate::syntax::Signature;

use super::search::DEFAULT_MAX_STRUCTURES;
use super::structure::{Layout, Structure};
use super::SemanticsError;

/// Number of structures over `layout` with `n` elements, or `None` on
/// overflow.
pub fn structure_count(layout: &Layout, n: usize) -> Option<u128> {
    let n128 = n as u128;
    let mut count: u128 = 1;
    for _ in &layout.constants {
        count = count.checked_mul(n128)?;
    }
    for &(_, arity) in &layout.functions {
        let entries = u32::try_from(tuple_count_checked(n, arity)?).ok()?;
        count = count.checked_mul(n128.checked_pow(entries)?)?;
    }
    for &(_, arity) in &layout.predicates {
        let entries = u32::try_from(tuple_count_checked(n, arity)?).ok()?;
        count = count.checked_mul(2u128.checked_pow(entries)?)?;
    }
    Some(count)
}

fn tuple_count_checked(n: usize, arity: usize) -> Option<usize> {
    n.checked_pow(u32::try_from(arity).ok()?)
}

/// The structure with the given position in enumeration order.
///
/// Positions are read as a mixed-radix number. From least to most
/// significant digit: each constant in lexical order (base `n`), each entry
/// of each function table (base `n`), each entry of each predicate table
/// (base 2). Table entries are ordered by argument tuple with the first
/// argument varying fastest.
pub fn structure_at(layout: &Arc<Layout>, n: usize, index: u128) -> Structure {
    let mut s = Structure::with_layout(Arc::clone(layout), n);
    decode_into(&mut s, index);
    s
}

/// Overwrites the tables of `s` with those of the structure at `index`.
pub(crate) fn decode_into(s: &mut Structure, mut index: u128) {
    let base = s.domain_size as u128;
    for c in s.constants.iter_mut() {
        *c = (index % base) as usize;
        index /= base;
    }
    for table in s.functions.iter_mut() {
        for v in table.iter_mut() {
            *v = (index % base) as usize;
            index /= base;
        }
    }
    for table in s.predicates.iter_mut() {
        for b in table.iter_mut() {
            *b = index % 2 == 1;
            index /= 2;
        }
    }
}

/// Every structure of one size, in enumeration order.
#[derive(Debug, Clone)]
pub struct Structures {
    layout: Arc<Layout>,
    n: usize,
    next: u128,
    count: u128,
}

impl Structures {
    /// Fails before producing anything when there are more than `limit`
    /// structures.
    pub fn new(layout: Arc<Layout>, n: usize, limit: u128) -> Result<Structures, SemanticsError> {
        assert!(n >= 1, "domains are non-empty");
        let count = structure_count(&layout, n).ok_or(SemanticsError::Resource {
            count: u128::MAX,
            limit,
        })?;
        if count > limit {
            return Err(SemanticsError::Resource { count, limit });
        }
        Ok(Structures {
            layout,
            n,
            next: 0,
            count,
        })
    }

    pub fn count(&self) -> u128 {
        self.count
    }
}

impl Iterator for Structures {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        if self.next >= self.count {
            return None;
        }
        let s = structure_at(&self.layout, self.n, self.next);
        self.next += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.count - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

pub fn enumerate_structures(sig: &Signature, n: usize) -> Result<Structures, SemanticsError> {
    Structures::new(Arc::new(Layout::new(sig)), n, DEFAULT_MAX_STRUCTURES)
}
