//! Checks that two presentations define isomorphic groups via explicit
//! generator maps in both directions.

use serde::{Deserialize, Serialize};

use crate::consequence::{ConsequenceVerdict, Prover};
use crate::error::Result;
use crate::morphism::GeneratorMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TietzeItem {
    /// e.g. `fwd(r3)` or `bwd(fwd(U))`.
    pub label: String,
    pub verdict: ConsequenceVerdict,
    pub spent_or_length: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TietzeReport {
    pub items: Vec<TietzeItem>,
}

impl TietzeReport {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.verdict.is_certified())
    }

    pub fn any_refuted(&self) -> bool {
        self.items.iter().any(|i| i.verdict.is_refuted())
    }

    pub fn any_unknown(&self) -> bool {
        self.items.iter().any(|i| matches!(i.verdict, ConsequenceVerdict::Unknown { .. }))
    }
}

fn item(label: String, verdict: ConsequenceVerdict) -> TietzeItem {
    let spent_or_length = match &verdict {
        ConsequenceVerdict::Certified(c) => c.len(),
        ConsequenceVerdict::Unknown { spent } => *spent,
        _ => 0,
    };
    TietzeItem { label, verdict, spent_or_length }
}

/// `p` and `q` are provers over the two presentations (they may carry
/// refuters). `fwd` maps `p`-generators to `q`-words, `bwd` the reverse.
pub fn tietze_check(
    p: &Prover,
    q: &Prover,
    fwd: &GeneratorMap,
    bwd: &GeneratorMap,
    budget: usize,
) -> Result<TietzeReport> {
    let (pp, qp) = (p.presentation(), q.presentation());
    let mut items = Vec::new();
    for (i, r) in pp.relators().iter().enumerate() {
        items.push(item(format!("fwd(r{i})"), q.decide(&fwd.apply(r), budget)?));
    }
    for (i, r) in qp.relators().iter().enumerate() {
        items.push(item(format!("bwd(s{i})"), p.decide(&bwd.apply(r), budget)?));
    }
    for (g, name) in pp.generators().iter().enumerate() {
        let x = crate::word::Word::gen(g as u16);
        let w = bwd.apply(&fwd.apply(&x)).multiply(&x.inverse());
        items.push(item(format!("bwd(fwd({name}))"), p.decide(&w, budget)?));
    }
    for (g, name) in qp.generators().iter().enumerate() {
        let x = crate::word::Word::gen(g as u16);
        let w = fwd.apply(&bwd.apply(&x)).multiply(&x.inverse());
        items.push(item(format!("fwd(bwd({name}))"), q.decide(&w, budget)?));
    }
    Ok(TietzeReport { items })
}
