//! Branch candidate pool: vertices harvested during reduction passes as
//! "almost-reduction" targets, tagged by the rule that would fire.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceRule {
    Twin,
    Funnel,
    Unconfined,
    Packing,
}

/// Deduplicated by vertex; the first tag for a vertex wins. Entries can go
/// stale (vertex hidden later), so consumers filter by aliveness.
pub struct BranchCandidatePool {
    entries: Vec<(usize, SourceRule)>,
    present: Vec<bool>,
}

impl BranchCandidatePool {
    pub fn new(n: usize) -> Self {
        BranchCandidatePool {
            entries: Vec::new(),
            present: vec![false; n],
        }
    }

    pub fn clear(&mut self) {
        for &(v, _) in &self.entries {
            self.present[v] = false;
        }
        self.entries.clear();
    }

    pub fn push(&mut self, v: usize, rule: SourceRule) {
        if !self.present[v] {
            self.present[v] = true;
            self.entries.push((v, rule));
        }
    }

    pub fn entries(&self) -> &[(usize, SourceRule)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}
