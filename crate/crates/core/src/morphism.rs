//! Generator substitutions between presentations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coeff::{Poly, Rational};
use crate::graded::{quotient_dimension, GradedError};
use crate::presentation::{presets, MapSpec, Presentation, Relation};
use crate::spanning::{Certificate, IdealMembership, SpanningError};
use crate::term::{Element, Generator, Perm, Symmetry, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("`{0}` is not a generator of the source")]
    UnknownGenerator(String),
    #[error("image of `{0}` must have arity 2")]
    NotBinary(String),
    #[error("image of {symmetry} generator `{name}` does not respect its symmetry")]
    Symmetry { name: String, symmetry: &'static str },
    #[error("image of `{0}` uses generators outside the target")]
    ForeignGenerator(String),
    #[error("inverse map must go from {expected} back, found {found}")]
    MissingInverse { expected: String, found: String },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Spanning(#[from] SpanningError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Sends each source generator to an arity-2 element of the target.
#[derive(Clone, Debug)]
pub struct GenMap {
    pub name: String,
    pub source: Presentation,
    pub target: Presentation,
    images: BTreeMap<String, Element>,
}

impl GenMap {
    pub fn new(
        name: &str,
        source: Presentation,
        target: Presentation,
        images: impl IntoIterator<Item = (String, Element)>,
    ) -> Result<Self, MorphismError> {
        let images: BTreeMap<String, Element> = images.into_iter().collect();
        for k in images.keys() {
            if source.generator(k).is_none() {
                return Err(MorphismError::UnknownGenerator(k.clone()));
            }
        }
        let swap = Perm::transposition(2, 1, 2).expect("valid");
        for g in &source.generators {
            let img = images
                .get(g.name())
                .ok_or_else(|| MorphismError::MissingImage(g.name().to_string()))?;
            if img.arity() != 2 {
                return Err(MorphismError::NotBinary(g.name().to_string()));
            }
            if img.generators().iter().any(|h| !target.generators.contains(h)) {
                return Err(MorphismError::ForeignGenerator(g.name().to_string()));
            }
            let swapped = img.permute_inputs(&swap).expect("arity 2");
            let ok = match g.symmetry() {
                Symmetry::Symmetric => swapped == *img,
                Symmetry::Antisymmetric => swapped == img.neg(),
                Symmetry::None => true,
            };
            if !ok {
                return Err(MorphismError::Symmetry {
                    name: g.name().to_string(),
                    symmetry: g.symmetry().keyword(),
                });
            }
        }
        Ok(GenMap {
            name: name.to_string(),
            source,
            target,
            images,
        })
    }

    pub fn from_spec(spec: &MapSpec) -> Result<Self, MorphismError> {
        GenMap::new(
            &spec.name,
            spec.source.clone(),
            spec.target.clone(),
            spec.images.iter().cloned(),
        )
    }

    pub fn identity(p: &Presentation) -> Self {
        let images = p.generators.iter().map(|g| (g.name().to_string(), g.element()));
        GenMap::new("identity", p.clone(), p.clone(), images).expect("generators map to themselves")
    }

    /// `g ↦ factor·g` for one generator, identity on the others.
    pub fn scaling(p: &Presentation, generator: &str, factor: Poly) -> Result<Self, MorphismError> {
        if p.generator(generator).is_none() {
            return Err(MorphismError::UnknownGenerator(generator.to_string()));
        }
        let images = p.generators.iter().map(|g| {
            let e = g.element();
            let e = if g.name() == generator { e.scale(&factor) } else { e };
            (g.name().to_string(), e)
        });
        GenMap::new(&format!("scale-{generator}"), p.clone(), p.clone(), images)
    }

    pub fn image(&self, generator: &str) -> Option<&Element> {
        self.images.get(generator)
    }

    pub fn images(&self) -> impl Iterator<Item = (&String, &Element)> {
        self.images.iter()
    }

    /// Substitutes the images vertex by vertex.
    pub fn apply(&self, e: &Element) -> Result<Element, MorphismError> {
        let mut out = Element::zero(e.arity());
        for (m, c) in e.terms() {
            out = out.add_scaled(&self.apply_tree(m.tree())?, c);
        }
        Ok(out)
    }

    fn apply_tree(&self, t: &Tree) -> Result<Element, MorphismError> {
        match t.as_node() {
            None => Ok(Element::leaf(t.min_leaf())),
            Some(node) => {
                let img = self
                    .images
                    .get(node.gen.name())
                    .ok_or_else(|| MorphismError::UnknownGenerator(node.gen.name().to_string()))?;
                let l = self.apply_tree(&node.left)?;
                let r = self.apply_tree(&node.right)?;
                Ok(img.graft(&[l, r]))
            }
        }
    }

    /// The presentation over the target generators whose relations are the
    /// images of the source relations.
    pub fn transport(&self) -> Result<Presentation, MorphismError> {
        let mut p = Presentation::new(&format!("{}({})", self.name, self.source.name), self.target.generators.clone());
        p.ideal_gens = self.target.ideal_gens.clone();
        let mut params: Vec<String> = self.source.parameters.clone();
        for e in self.images.values() {
            for x in e.parameters() {
                if !params.contains(&x) {
                    params.push(x);
                }
            }
        }
        p.parameters = params;
        for r in &self.source.relations {
            p.relations.push(Relation {
                name: r.name.clone(),
                element: self.apply(&r.element)?,
            });
        }
        Ok(p)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GenMap) -> Result<GenMap, MorphismError> {
        let images = self
            .images
            .iter()
            .map(|(k, e)| Ok((k.clone(), other.apply(e)?)))
            .collect::<Result<Vec<_>, MorphismError>>()?;
        GenMap::new(
            &format!("{}.{}", other.name, self.name),
            self.source.clone(),
            other.target.clone(),
            images,
        )
    }
}

/// Images of the source relations tested against the target ideal in
/// arity 3.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub map: String,
    pub entries: Vec<(String, Certificate)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.member && c.verified)
    }
}

pub fn relations_map_into_ideal(f: &GenMap) -> Result<RelationReport, MorphismError> {
    let tester = IdealMembership::new(&f.target, 3)?;
    let mut entries = Vec::new();
    for r in &f.source.relations {
        let img = f.apply(&r.element)?;
        if img.parameters().is_empty() {
            entries.push((r.name.clone(), tester.certify(&img)?));
        } else {
            // one entry per parameter monomial
            for (k, c) in tester.certify_identically(&img)? {
                entries.push((format!("{} [{k}]", r.name), c));
            }
        }
    }
    Ok(RelationReport {
        map: f.name.clone(),
        entries,
    })
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub forward: RelationReport,
    pub backward: RelationReport,
    /// `(n, source dimension, target dimension)`.
    pub dims: Vec<(usize, usize, usize)>,
    /// Generators whose image under a composite differs from themselves.
    pub composite_failures: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.forward.passed()
            && self.backward.passed()
            && self.composite_failures.is_empty()
            && self.dims.iter().all(|(_, a, b)| a == b)
    }
}

/// Relation membership both ways, composites on generators, and quotient
/// dimensions for `2 ≤ n ≤ max_arity`.
pub fn iso_check_low_arity(f: &GenMap, inverse: &GenMap, max_arity: usize) -> Result<IsoReport, MorphismError> {
    if inverse.source.name != f.target.name || inverse.target.name != f.source.name {
        return Err(MorphismError::MissingInverse {
            expected: format!("{} -> {}", f.target.name, f.source.name),
            found: format!("{} -> {}", inverse.source.name, inverse.target.name),
        });
    }
    let forward = relations_map_into_ideal(f)?;
    let backward = relations_map_into_ideal(inverse)?;
    let mut composite_failures = Vec::new();
    // arity-2 components of the ideals are zero, so the composites must be
    // the identity on the nose
    for (map, side) in [(f.then(inverse)?, &f.source), (inverse.then(f)?, &f.target)] {
        for g in &side.generators {
            if map.image(g.name()) != Some(&g.element()) {
                composite_failures.push(format!("{}: {}", map.name, g.name()));
            }
        }
    }
    let mut dims = Vec::new();
    for n in 2..=max_arity {
        let a = quotient_dimension(&f.source, n)?.quotient();
        let b = quotient_dimension(&f.target, n)?.quotient();
        dims.push((n, a, b));
    }
    let report = IsoReport {
        forward,
        backward,
        dims,
        composite_failures,
    };
    let structural = report.forward.passed() && report.backward.passed() && report.composite_failures.is_empty();
    if structural && report.dims.iter().any(|(_, a, b)| a != b) {
        return Err(MorphismError::Inconsistent(format!(
            "mutually inverse maps but dimensions differ: {:?}",
            report.dims
        )));
    }
    Ok(report)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn kokoris_gen() -> Generator {
    presets::plain()
}

/// `p(1,2) ↦ m(1,2) + b(1,2)`: the product written through its symmetric
/// and antisymmetric parts.
pub fn depolarization(source: Presentation, target: Presentation) -> Result<GenMap, MorphismError> {
    let x = presets::x;
    let img = presets::m(&x(1), &x(2)).add(&presets::b(&x(1), &x(2)));
    GenMap::new("depolarize", source, target, [(kokoris_gen().name().to_string(), img)])
}

/// `m ↦ ½(p12 + p21)`, `b ↦ ½(p12 − p21)`, inverse to [`depolarization`].
pub fn half_polarization(source: Presentation, target: Presentation) -> Result<GenMap, MorphismError> {
    let x = presets::x;
    let p12 = presets::p(&x(1), &x(2));
    let p21 = presets::p(&x(2), &x(1));
    GenMap::new(
        "polarize",
        source,
        target,
        [
            ("m".to_string(), p12.add(&p21).scale_rational(&half())),
            ("b".to_string(), p12.sub(&p21).scale_rational(&half())),
        ],
    )
}

/// `m ↦ p12 + p21`, `b ↦ p12 − p21`, without halves.
pub fn polarization(source: Presentation, target: Presentation) -> Result<GenMap, MorphismError> {
    let x = presets::x;
    let p12 = presets::p(&x(1), &x(2));
    let p21 = presets::p(&x(2), &x(1));
    GenMap::new(
        "polarize",
        source,
        target,
        [("m".to_string(), p12.add(&p21)), ("b".to_string(), p12.sub(&p21))],
    )
}

/// `p ↦ ½(m + b)`, inverse to [`polarization`].
pub fn half_depolarization(source: Presentation, target: Presentation) -> Result<GenMap, MorphismError> {
    let x = presets::x;
    let img = presets::depolarized_product(&x(1), &x(2));
    GenMap::new("depolarize", source, target, [(kokoris_gen().name().to_string(), img)])
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::coeff::Assignment;
    use crate::presentation::{parse_document, preset};
    use crate::term::testgen::{random_element, random_perm, SplitMix};

    fn kok_ap() -> (GenMap, GenMap) {
        let kok = preset("kokoris").unwrap();
        let ap = preset("almost-poisson").unwrap();
        (
            depolarization(kok.clone(), ap.clone()).unwrap(),
            half_polarization(ap, kok).unwrap(),
        )
    }

    #[test]
    fn apply_examples() {
        let (to_ap, to_kok) = kok_ap();
        let m12 = presets::m(&presets::x(1), &presets::x(2));
        assert_eq!(to_kok.apply(&m12).unwrap().to_string(), "1/2*p(1,2) + 1/2*p(2,1)");
        assert!(to_ap.apply(&Element::zero(3)).unwrap().is_zero());
        let kok = presets::kokoris_relation();
        assert_eq!(to_kok.apply(&to_ap.apply(&kok).unwrap()).unwrap(), kok);
    }

    #[test]
    fn construction_checks_symmetry() {
        let ap = preset("almost-poisson").unwrap();
        let kok = preset("kokoris").unwrap();
        let p12 = presets::p(&presets::x(1), &presets::x(2));
        let err = GenMap::new(
            "bad",
            ap.clone(),
            kok.clone(),
            [("m".to_string(), p12.clone()), ("b".to_string(), p12.clone())],
        )
        .unwrap_err();
        assert!(matches!(err, MorphismError::Symmetry { .. }));
        let sym = p12.add(&presets::p(&presets::x(2), &presets::x(1)));
        let err = GenMap::new("bad", ap.clone(), kok.clone(), [("m".to_string(), sym)]).unwrap_err();
        assert_eq!(err, MorphismError::MissingImage("b".into()));
        let err = GenMap::new("bad", kok, ap, [("p".to_string(), p12)]).unwrap_err();
        assert_eq!(err, MorphismError::ForeignGenerator("p".into()));
    }

    #[test]
    fn relation_images() {
        let (to_ap, to_kok) = kok_ap();
        let r = relations_map_into_ideal(&to_ap).unwrap();
        assert!(r.passed(), "{:?}", r.entries);
        let r = relations_map_into_ideal(&to_kok).unwrap();
        assert!(r.passed(), "{:?}", r.entries);
        let id = relations_map_into_ideal(&GenMap::identity(&preset("almost-poisson").unwrap())).unwrap();
        assert!(id.passed());
        for (name, c) in &id.entries {
            assert_eq!(c.coordinates, vec![(Rational::one(), format!("{name}[1,2,3]"))]);
        }
    }

    #[test]
    fn kokoris_and_almost_poisson_agree_to_arity_four() {
        let (to_ap, to_kok) = kok_ap();
        let rep = iso_check_low_arity(&to_ap, &to_kok, 4).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.dims, vec![(2, 2, 2), (3, 7, 7), (4, 37, 37)]);
    }

    #[test]
    fn associative_matches_the_flat_family_at_one() {
        let one: Assignment = [("t".to_string(), Rational::one())].into_iter().collect();
        let ll = preset("livernet-loday").unwrap().evaluate(&one).unwrap();
        let ass = preset("associative").unwrap();
        let f = half_depolarization(ass.clone(), ll.clone()).unwrap();
        let g = polarization(ll, ass).unwrap();
        let rep = iso_check_low_arity(&f, &g, 4).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.dims, vec![(2, 2, 2), (3, 6, 6), (4, 24, 24)]);
    }

    #[test]
    fn identity_on_poisson() {
        let p = preset("poisson").unwrap();
        let id = GenMap::identity(&p);
        assert!(iso_check_low_arity(&id, &id, 4).unwrap().passed());
    }

    #[test]
    fn inverse_must_point_back() {
        let (to_ap, _) = kok_ap();
        assert!(matches!(
            iso_check_low_arity(&to_ap, &to_ap, 3),
            Err(MorphismError::MissingInverse { .. })
        ));
    }

    #[test]
    fn maps_from_text() {
        let src = "map dep : kokoris -> almost-poisson { p(1,2) => m(1,2) + b(1,2); }";
        let doc = parse_document(src).unwrap();
        let f = GenMap::from_spec(&doc.maps[0]).unwrap();
        let (g, _) = kok_ap();
        assert_eq!(f.image("p"), g.image("p"));
    }

    #[test]
    fn scaling_keeps_almost_poisson_relations() {
        let ap = preset("almost-poisson").unwrap();
        let f = GenMap::scaling(&ap, "b", Poly::var("h")).unwrap();
        let t = f.transport().unwrap();
        assert_eq!(t.parameters, vec!["h".to_string()]);
        assert!(GenMap::scaling(&ap, "q", Poly::one()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn apply_commutes_with_operad_structure(seed in any::<u64>(), k in 1usize..=3, n in 1usize..=3) {
            let mut rng = SplitMix(seed);
            let (to_ap, to_kok) = kok_ap();
            for f in [&to_ap, &to_kok] {
                let gens = f.source.generators.clone();
                let x = random_element(&mut rng, &gens, k);
                let y = random_element(&mut rng, &gens, n);
                let slot = 1 + rng.below(k);
                let lhs = f.apply(&x.compose(slot, &y).unwrap()).unwrap();
                let rhs = f.apply(&x).unwrap().compose(slot, &f.apply(&y).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                let s = random_perm(&mut rng, k);
                prop_assert_eq!(
                    f.apply(&x.permute_inputs(&s).unwrap()).unwrap(),
                    f.apply(&x).unwrap().permute_inputs(&s).unwrap()
                );
                let z = random_element(&mut rng, &gens, k);
                prop_assert_eq!(
                    f.apply(&x.add(&z.scale(&Poly::int(3)))).unwrap(),
                    f.apply(&x).unwrap().add(&f.apply(&z).unwrap().scale(&Poly::int(3)))
                );
            }
        }
    }
}
