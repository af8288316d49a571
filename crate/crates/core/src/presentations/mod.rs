//! Knot notations and the knot group with its peripheral system.
//!
//! Braid words and planar-diagram codes are parsed into [`BraidWord`] and
//! [`PlanarDiagram`]; [`wirtinger`] turns either into a [`KnotGroup`]: a
//! [`GroupPresentation`] with one generator per arc together with a
//! [`PeripheralSystem`] (meridian, longitude, framing).
//!
//! Crossing signs follow the right-handed = +1 convention. Planar-diagram
//! tuples are read KnotTheory-style: `X[i,j,k,l]` lists the four edge labels
//! counterclockwise starting at the incoming under-edge.

mod abelian;
mod braid;
mod pd;
mod peripheral;
mod text;
mod wirtinger;

use thiserror::Error;

use crate::word::Word;

pub use abelian::{abelianization_rank, linking_weights, LinkingForm};
pub use braid::{parse_braid, BraidWord};
pub use pd::{parse_pd, PlanarDiagram, SignConvention};
pub use peripheral::{reframe, transform_peripheral, PeripheralTransform, Transformed};
pub use text::WordSyntax;
pub use wirtinger::{simplify, wirtinger, Diagram};
pub(crate) use wirtinger::canonical_cyclic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("strand index 0 at position {pos}")]
    ZeroIndex { pos: usize },
    #[error("unknown strand {letter} at position {pos}: beyond the {strands} declared strands")]
    UnknownStrand {
        pos: usize,
        letter: String,
        strands: usize,
    },
    #[error("arc label {label} appears {count} times (expected exactly 2)")]
    ArcLabel { label: u32, count: usize },
    #[error("malformed crossing tuple at position {pos}: {msg}")]
    MalformedTuple { pos: usize, msg: String },
    #[error("diagram has {components} components; only knots are supported")]
    MultiComponent { components: usize },
    #[error("inconsistent strand orientation at crossing {crossing}")]
    InconsistentOrientation { crossing: usize },
    #[error("duplicate generator symbol `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator symbol `{0}`")]
    InvalidSymbol(String),
    #[error("relator {index} uses undeclared generator index {generator}")]
    UndeclaredLetter { index: usize, generator: usize },
    #[error("abelianization is not infinite cyclic (rank of exponent matrix {rank}, generators {generators})")]
    NotKnotGroup { rank: usize, generators: usize },
    #[error("meridian does not generate the abelianization (linking number {0})")]
    BadMeridian(i64),
    #[error("peripheral invariant violated: {0}")]
    Peripheral(String),
}

/// A finitely presented group: generator symbols plus relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if !text::is_symbol(g) {
                return Err(PresentationError::InvalidSymbol(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (index, r) in relators.iter().enumerate() {
            if let Some(generator) = r.max_generator().filter(|&m| m >= generators.len()) {
                return Err(PresentationError::UndeclaredLetter { index, generator });
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    /// Builds a presentation from textual relators such as `"m a m A M a^-1"`.
    pub fn from_text(generators: &[&str], relators: &[&str]) -> Result<Self, PresentationError> {
        let shell = GroupPresentation::new(generators.iter().map(|s| s.to_string()).collect(), vec![])?;
        let relators = relators
            .iter()
            .map(|r| shell.parse_word(r))
            .collect::<Result<Vec<_>, _>>()?;
        GroupPresentation::new(shell.generators, relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        text::parse_word(self, text, &[])
    }

    /// Like [`parse_word`](Self::parse_word) but also accepts named words
    /// (e.g. `lambda`, `mu`) that are not generator symbols.
    pub fn parse_word_with(&self, text: &str, aliases: &[(&str, &Word)]) -> Result<Word, PresentationError> {
        text::parse_word(self, text, aliases)
    }

    pub fn format_word(&self, w: &Word) -> String {
        text::format_word(self, w)
    }

    /// Exponent-sum matrix of the relators (rows) over generators (columns).
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.exponent_vector(self.rank()))
            .collect()
    }
}

/// Meridian, longitude and framing of a knot inside its group.
///
/// The framing is the linking number of the longitude, so the Seifert
/// framing is `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralSystem {
    pub meridian: Word,
    pub longitude: Word,
    pub framing: i64,
}

impl PeripheralSystem {
    pub fn is_seifert(&self) -> bool {
        self.framing == 0
    }
}

/// A knot group: presentation plus peripheral system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotGroup {
    pub presentation: GroupPresentation,
    pub peripheral: PeripheralSystem,
}

impl KnotGroup {
    /// Checks the abelian invariants: infinite cyclic abelianization,
    /// `lk(meridian) = 1` and `lk(longitude) = framing`.
    ///
    /// Commutation of meridian and longitude needs a word-problem backend and
    /// is checked in [`crate::rewriting`].
    pub fn validate(&self) -> Result<LinkingForm, PresentationError> {
        let lk = linking_weights(&self.presentation, &self.peripheral.meridian)?;
        let l = lk.of(&self.peripheral.longitude);
        if l != self.peripheral.framing {
            return Err(PresentationError::Peripheral(format!(
                "linking number of longitude is {l}, framing is {}",
                self.peripheral.framing
            )));
        }
        Ok(lk)
    }

    /// The unknot group `<m | >` with `μ = m`, `λ = 1`.
    pub fn unknot() -> Self {
        KnotGroup {
            presentation: GroupPresentation::new(vec!["m".into()], vec![]).expect("valid"),
            peripheral: PeripheralSystem {
                meridian: Word::generator(0),
                longitude: Word::identity(),
                framing: 0,
            },
        }
    }

    /// The right-handed trefoil as `<m, a | m a m = a m a>` with
    /// `λ = a m a^-1 m a m^-3` (Seifert framed).
    pub fn trefoil() -> Self {
        let presentation = GroupPresentation::from_text(&["m", "a"], &["m a m a^-1 m^-1 a^-1"]).expect("valid");
        let longitude = presentation.parse_word("a m a^-1 m a m^-3").expect("valid");
        KnotGroup {
            presentation,
            peripheral: PeripheralSystem {
                meridian: Word::generator(0),
                longitude,
                framing: 0,
            },
        }
    }

    /// Line-oriented text form (`key = value`), readable by [`KnotGroup::parse`].
    pub fn to_text(&self) -> String {
        text::knot_group_to_text(self)
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        text::knot_group_from_text(text)
    }
}
