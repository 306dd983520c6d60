//! Presentations by binary generators and arity-3 relations, the text
//! format, and the built-in presets.

mod dsl;
pub mod presets;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::coeff::{Assignment, CoeffError};
use crate::term::{Element, Generator};

pub use dsl::{parse, parse_document, Document, MapSpec};
pub use presets::{preset, PRESET_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub element: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub parameters: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    /// Names of the generators spanning the filtration ideal.
    pub ideal_gens: BTreeSet<String>,
}

impl Presentation {
    pub fn new(name: &str, generators: Vec<Generator>) -> Self {
        Presentation {
            name: name.to_string(),
            parameters: Vec::new(),
            generators,
            relations: Vec::new(),
            ideal_gens: BTreeSet::new(),
        }
    }

    pub fn with_parameters(mut self, params: &[&str]) -> Self {
        self.parameters = params.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_ideal(mut self, gens: &[&str]) -> Self {
        self.ideal_gens = gens.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn relation(mut self, name: &str, element: Element) -> Self {
        assert_eq!(element.arity(), 3, "relation {name} must have arity 3");
        self.relations.push(Relation {
            name: name.to_string(),
            element,
        });
        self
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name() == name)
    }

    pub fn relation_elements(&self) -> Vec<Element> {
        self.relations.iter().map(|r| r.element.clone()).collect()
    }

    /// Specializes parameters. Relations that become zero are dropped.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Presentation, PresentationError> {
        for k in assignment.keys() {
            if !self.parameters.contains(k) {
                return Err(CoeffError::UnknownParameter(k.clone()).into());
            }
        }
        let mut out = self.clone();
        out.parameters.retain(|p| !assignment.contains_key(p));
        out.relations = self
            .relations
            .iter()
            .map(|r| Relation {
                name: r.name.clone(),
                element: r.element.evaluate(assignment),
            })
            .filter(|r| !r.element.is_zero())
            .collect();
        Ok(out)
    }

    /// Parses an element over this presentation's generators and parameters.
    pub fn element(&self, src: &str) -> Result<Element, crate::text::ParseError> {
        crate::term::parse_element(src, &self.generators, Some(&self.parameters))
    }
}

impl fmt::Display for Presentation {
    /// The text format accepted by [`parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "operad {} {{", self.name)?;
        if !self.parameters.is_empty() {
            writeln!(f, "  param {};", self.parameters.join(", "))?;
        }
        for g in &self.generators {
            writeln!(f, "  gen {} : 2 {};", g.name(), g.symmetry().keyword())?;
        }
        if !self.ideal_gens.is_empty() {
            let names: Vec<&str> = self.ideal_gens.iter().map(String::as_str).collect();
            writeln!(f, "  ideal {};", names.join(", "))?;
        }
        for r in &self.relations {
            writeln!(f, "  rel {} : {} = 0;", r.name, r.element)?;
        }
        writeln!(f, "}}")
    }
}

#[cfg(test)]
mod tests;
