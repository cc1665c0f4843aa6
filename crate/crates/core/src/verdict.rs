//! The result type shared by every fuel-bounded search, with the
//! certificates those searches produce.

use serde::{Deserialize, Serialize};

use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Unknown,
}

impl Status {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Refuted => 1,
            Status::Unknown => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub fuel_spent: u64,
}

impl Verdict {
    pub fn verified(witness: Witness, fuel_spent: u64) -> Self {
        Verdict { status: Status::Verified, witness: Some(witness), fuel_spent }
    }

    /// Verified by a finite check that needs no certificate.
    pub fn holds(fuel_spent: u64) -> Self {
        Verdict { status: Status::Verified, witness: None, fuel_spent }
    }

    pub fn refuted(witness: Witness, fuel_spent: u64) -> Self {
        Verdict { status: Status::Refuted, witness: Some(witness), fuel_spent }
    }

    /// An exhausted budget. `fuel_spent` is always the full budget.
    pub fn unknown(budget: u64) -> Self {
        Verdict { status: Status::Unknown, witness: None, fuel_spent: budget }
    }

    /// An exhausted budget carrying a partial certificate (for instance a
    /// completed bounded search).
    pub fn unknown_with(witness: Witness, budget: u64) -> Self {
        Verdict { status: Status::Unknown, witness: Some(witness), fuel_spent: budget }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// The witness of a Verified verdict.
    pub fn into_verified(self) -> Option<Witness> {
        if self.is_verified() {
            self.witness
        } else {
            None
        }
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts always serialize")
    }
}

/// A fuel budget. One unit pays for one oracle query or one enumerated or
/// derived word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    budget: u64,
    spent: u64,
}

impl Fuel {
    pub fn new(budget: u64) -> Self {
        Fuel { budget, spent: 0 }
    }

    /// Takes one unit; false once the budget is gone.
    pub fn tick(&mut self) -> bool {
        self.take(1)
    }

    pub fn take(&mut self, n: u64) -> bool {
        if self.budget - self.spent >= n {
            self.spent += n;
            true
        } else {
            self.spent = self.budget;
            false
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn remaining(&self) -> u64 {
        self.budget - self.spent
    }

    pub fn exhausted(&self) -> bool {
        self.spent >= self.budget
    }

    pub fn unknown(&self) -> Verdict {
        Verdict::unknown(self.budget)
    }
}

/// `conjugator · relator^{±1} · conjugator⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateFactor {
    pub conjugator: Word,
    pub relator: Word,
    pub inverse: bool,
}

impl ConjugateFactor {
    pub fn value(&self) -> Word {
        let r = if self.inverse { self.relator.inverse() } else { self.relator.clone() };
        r.conjugate_by(&self.conjugator)
    }
}

/// Proof that `target` lies in the normal closure of some relators: the
/// product of the factors freely reduces to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub target: Word,
    pub factors: Vec<ConjugateFactor>,
}

impl Derivation {
    /// Checks the derivation by free reduction, given the allowed relators.
    pub fn check(&self, relators: &[Word]) -> bool {
        let rank = self.target.rank();
        let mut acc = Word::identity(rank);
        for f in &self.factors {
            if !relators.contains(&f.relator) || f.relator.rank() != rank || f.conjugator.rank() != rank {
                return false;
            }
            acc = acc.mul(&f.value());
        }
        acc == self.target
    }
}

/// A generator (or other target) written as a word over a tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expression {
    pub target: Word,
    pub over_tuple: Word,
}

/// A product of commutators `[u₁,v₁]⋯[u_m,v_m]` equal to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorProduct {
    pub target: Word,
    pub commutators: Vec<(Word, Word)>,
}

/// One element with a sign, as an index into a witness set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedIndex {
    pub index: usize,
    pub inverse: bool,
}

/// For one signing of a set, a nonempty product of signed elements that is
/// trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedProduct {
    pub signs: Vec<bool>,
    pub product: Vec<usize>,
}

/// Proof that an atom `Ω_{R;S}` is empty, with the irrelation derived from R.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomWitness {
    pub relations: Vec<Word>,
    pub irrelations: Vec<Word>,
    pub reason: AtomReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AtomReason {
    /// The atom lies inside a right-hand set.
    Covered { by: usize },
    /// The atom is empty.
    Incoherent { derivation: Derivation },
}

/// Certificates attached to verdicts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A single word whose (non)triviality decides the question.
    Word { word: Word },
    /// Every generator of a group expressed over a tuple.
    Generation { tuple: Vec<Word>, expressions: Vec<Expression> },
    Derivation { derivation: Derivation },
    Inclusion { atoms: Vec<AtomWitness> },
    /// A finite set containing ε closed under right multiplication by
    /// generators: `table[i][l]` is the index of `elements[i]·s_{l+1}`.
    Order { order: u64, elements: Vec<Word>, table: Vec<Vec<usize>> },
    /// Like `Order`, but equalities are certified by derivations from a
    /// presentation rather than by an oracle.
    PresentedOrder { order: u64, elements: Vec<Word>, table: Vec<Vec<usize>>, proofs: Vec<Derivation> },
    /// Pairwise distinct elements.
    Distinct { elements: Vec<Word> },
    Torsion { element: Word, order: u64 },
    Central { element: Word },
    Perfect { products: Vec<CommutatorProduct> },
    VirtuallyCyclic {
        subgroup: Vec<Word>,
        normality: Vec<Expression>,
        cyclic_generator: Word,
        cyclic: Vec<Expression>,
        quotient_order: u64,
        quotient: Box<Witness>,
    },
    FiniteClass { element: Word, class: Vec<Word> },
    NotOrderable { elements: Vec<Word>, products: Vec<SignedProduct> },
    FatTriangle {
        delta: u64,
        vertices: [Word; 3],
        /// Paths from x to y, y to z and x to z.
        sides: [Word; 3],
        /// Point on the x–y side, as the prefix length along it.
        point: usize,
    },
    Bit { index: u64, left: bool, right: bool },
    Factorization { factors: Vec<SignedIndex> },
    /// Search space exhausted without a hit.
    SearchExhausted { bound: u64 },
    Cascade { steps: Vec<Derivation> },
}
