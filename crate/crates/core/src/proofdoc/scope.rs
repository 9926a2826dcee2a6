use super::ProofDocument;

/// A subproof: its opening line, its last line and its nesting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subproof {
    pub start: usize,
    pub end: usize,
    pub depth: usize,
    /// Index into [`Scopes::subproofs`] of the enclosing subproof.
    pub parent: Option<usize>,
}

impl Subproof {
    pub fn contains(&self, line: usize) -> bool {
        self.start <= line && line <= self.end
    }
}

/// The subproof tree of a structurally valid document.
#[derive(Debug, Clone, Default)]
pub struct Scopes {
    pub subproofs: Vec<Subproof>,
    /// For each line (index `n - 1`), the innermost subproof containing it.
    innermost: Vec<Option<usize>>,
}

impl Scopes {
    pub fn build(doc: &ProofDocument) -> Scopes {
        let mut subproofs: Vec<Subproof> = Vec::new();
        let mut innermost = Vec::with_capacity(doc.len());
        let mut open: Vec<usize> = Vec::new();
        for line in &doc.lines {
            let keep = if line.kind.opens_subproof() {
                line.depth.saturating_sub(1)
            } else {
                line.depth
            };
            while open.len() > keep {
                open.pop();
            }
            if line.kind.opens_subproof() {
                subproofs.push(Subproof {
                    start: line.number,
                    end: line.number,
                    depth: line.depth,
                    parent: open.last().copied(),
                });
                open.push(subproofs.len() - 1);
            }
            for &s in &open {
                subproofs[s].end = line.number;
            }
            innermost.push(open.last().copied());
        }
        Scopes {
            subproofs,
            innermost,
        }
    }

    pub fn innermost(&self, line: usize) -> Option<&Subproof> {
        line.checked_sub(1)
            .and_then(|i| self.innermost.get(i).copied().flatten())
            .map(|s| &self.subproofs[s])
    }

    /// The subproof spanning exactly `start..=end`, if there is one.
    pub fn subproof(&self, start: usize, end: usize) -> Option<&Subproof> {
        self.subproofs
            .iter()
            .find(|s| s.start == start && s.end == end)
    }

    /// Subproofs that are still open at `line`, outermost first.
    pub fn open_at(&self, line: usize) -> Vec<&Subproof> {
        let mut chain = Vec::new();
        let mut cur = line
            .checked_sub(1)
            .and_then(|i| self.innermost.get(i).copied().flatten());
        while let Some(s) = cur {
            chain.push(&self.subproofs[s]);
            cur = self.subproofs[s].parent;
        }
        chain.reverse();
        chain
    }

    /// Whether line `l` may be cited from line `at`.
    pub fn line_accessible(&self, l: usize, at: usize) -> bool {
        if l == 0 || l >= at {
            return false;
        }
        match self.innermost(l) {
            None => true,
            Some(s) => s.contains(at),
        }
    }

    /// Whether the subproof `start..=end` may be cited from line `at`.
    pub fn subproof_accessible(&self, start: usize, end: usize, at: usize) -> bool {
        let Some(s) = self.subproof(start, end) else {
            return false;
        };
        s.end < at
            && match s.parent {
                None => true,
                Some(p) => self.subproofs[p].contains(at),
            }
    }
}

/// Line numbers whose formulas are available at line `at`.
pub fn accessible(doc: &ProofDocument, at: usize) -> Vec<usize> {
    let scopes = Scopes::build(doc);
    (1..at.min(doc.len() + 1))
        .filter(|&l| scopes.line_accessible(l, at))
        .collect()
}
