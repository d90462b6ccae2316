//! JSON documents for presentations:
//! `{"generators": ["x1", "d1x1", {"var": "th1", "grade": 1}],
//!   "annihilators": [["d1x1", "d1x1"]], "substitutions": {"x0": "1 - x1"}}`.
//!
//! A generator given as a bare string has grade equal to its depth; the
//! grade of an eliminated variable is read off its image.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::text::{parse_poly, parse_var_key};
use super::var::GVar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Name(String),
    Graded { var: String, grade: i32 },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct PresentationDoc {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub annihilators: Vec<[String; 2]>,
    #[serde(default)]
    pub substitutions: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
}

impl PresentationDoc {
    pub fn from_presentation(p: &Presentation) -> Self {
        let generators = p
            .generators()
            .iter()
            .map(|v| {
                if v.grade() == v.depth() as i32 {
                    GeneratorSpec::Name(v.to_string())
                } else {
                    GeneratorSpec::Graded { var: v.to_string(), grade: v.grade() }
                }
            })
            .collect();
        PresentationDoc {
            generators,
            annihilators: p.annihilator_pairs().into_iter().map(|(v, w)| [v.to_string(), w.to_string()]).collect(),
            substitutions: p.substitutions().iter().map(|(v, img)| (v.to_string(), img.to_string())).collect(),
            relations: p.relations().iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn build(&self) -> Result<Presentation> {
        let mut gens = Vec::new();
        for g in &self.generators {
            let v = match g {
                GeneratorSpec::Name(name) => {
                    let (f, s, d) = parse_var_key(name)?;
                    GVar::new(f, s, d, d as i32)
                }
                GeneratorSpec::Graded { var, grade } => {
                    let (f, s, d) = parse_var_key(var)?;
                    GVar::new(f, s, d, *grade)
                }
            };
            gens.push(v);
        }
        let free = Presentation::free(gens.iter().copied())?;
        let mut builder = Presentation::builder().generators(gens.iter().copied());
        let mut eliminated = Vec::new();
        for (name, image) in &self.substitutions {
            let (f, s, d) = parse_var_key(name)?;
            let img = parse_poly(image, &free)?;
            let grade = img.homogeneous_grade().unwrap_or(d as i32);
            let v = GVar::new(f, s, d, grade);
            eliminated.push((v, img.clone()));
            builder = builder.substitute(v, img);
        }
        let mut with_subs = Presentation::builder().generators(gens.iter().copied());
        for (v, img) in &eliminated {
            with_subs = with_subs.substitute(*v, img.clone());
        }
        let with_subs = with_subs.build()?;
        for [a, b] in &self.annihilators {
            let find = |name: &str| -> Result<GVar> {
                with_subs.lookup(parse_var_key(name)?).ok_or_else(|| Error::PresentationMismatch(name.to_string()))
            };
            builder = builder.annihilate(find(a)?, find(b)?);
        }
        for r in &self.relations {
            builder = builder.relation(parse_poly(r, &with_subs)?);
        }
        builder.build()
    }
}

pub fn presentation_from_json(s: &str) -> Result<Presentation> {
    serde_json::from_str::<PresentationDoc>(s)?.build()
}

pub fn presentation_to_json(p: &Presentation) -> String {
    serde_json::to_string_pretty(&PresentationDoc::from_presentation(p)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = r#"{
            "generators": ["x1", "d1x1", "d2x1", {"var": "th1", "grade": 1}],
            "annihilators": [["d1x1", "d2x1"], ["d2x1", "d2x1"], ["d1x1", "d1x1"]],
            "substitutions": {"x0": "1 - x1", "d1x0": "-d1x1"}
        }"#;
        let p = presentation_from_json(src).unwrap();
        assert_eq!(p.generators().len(), 4);
        assert_eq!(p.substitutions().len(), 2);
        let again = presentation_from_json(&presentation_to_json(&p)).unwrap();
        assert_eq!(p, again);
    }
}
