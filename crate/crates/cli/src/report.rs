//! JSON reports. Every number is a decimal string; timing lives under `volatile`.

use std::collections::BTreeMap;
use std::fmt::Display;

use divlab::{
    degree_profile, is_intersecting, is_upset, DegreeProfile, DiversityResult, Family,
    Intersection, Regularity, Upset,
};
use serde::Serialize;

pub const PROPERTY_SCHEMA: &str = "divlab.property-report/1";
pub const BOUNDS_SCHEMA: &str = "divlab.bounds/1";
pub const SEARCH_SCHEMA: &str = "divlab.search-report/1";
pub const PLANE_SCHEMA: &str = "divlab.plane/1";

pub fn num(v: impl Display) -> String {
    v.to_string()
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Source {
    pub kind: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct IntersectingSection {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DegreeWitness {
    pub element: String,
    pub degree: String,
    pub other_element: String,
    pub other_degree: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RegularSection {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DegreeWitness>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct UpsetWitness {
    pub member: String,
    pub missing_element: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct UpsetSection {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<UpsetWitness>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DiversitySection {
    pub value: String,
    pub argmax_element: String,
    pub max_degree: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Volatile {
    pub duration_ms: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PropertyReport {
    pub schema: &'static str,
    pub source: Source,
    pub ground_n: String,
    pub family_size: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersecting: Option<IntersectingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<RegularSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upset: Option<UpsetSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diversity: Option<DiversitySection>,
    pub checks: Vec<CheckLine>,
    pub all_pass: bool,
    pub volatile: Volatile,
}

impl PropertyReport {
    pub fn new(kind: &str, params: &[(&str, String)], family: &Family) -> Self {
        PropertyReport {
            schema: PROPERTY_SCHEMA,
            source: Source {
                kind: kind.to_string(),
                params: params
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect(),
            },
            ground_n: num(family.ground_n()),
            family_size: num(family.len()),
            intersecting: None,
            regular: None,
            upset: None,
            diversity: None,
            checks: Vec::new(),
            all_pass: true,
            volatile: Volatile {
                duration_ms: String::new(),
            },
        }
    }

    pub fn check(&mut self, name: &str, expected: impl Display, actual: impl Display) -> bool {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.checks.push(CheckLine {
            name: name.to_string(),
            expected,
            actual,
            pass,
        });
        self.all_pass &= pass;
        pass
    }

    /// A check whose pass condition is not plain equality (e.g. an inequality).
    pub fn check_with(&mut self, name: &str, expected: String, actual: String, pass: bool) {
        self.checks.push(CheckLine {
            name: name.to_string(),
            expected,
            actual,
            pass,
        });
        self.all_pass &= pass;
    }

    pub fn scan_intersecting(&mut self, family: &Family) -> bool {
        let verdict = is_intersecting(family);
        self.intersecting = Some(intersecting_section(&verdict));
        verdict.holds()
    }

    pub fn scan_upset(&mut self, family: &Family) -> bool {
        let verdict = is_upset(family);
        let witness = match verdict {
            Upset::Upset => None,
            Upset::Violation { member, element } => Some(UpsetWitness {
                member: member.to_string(),
                missing_element: num(element),
            }),
        };
        self.upset = Some(UpsetSection {
            holds: verdict.holds(),
            witness,
        });
        verdict.holds()
    }

    /// Fills the regular and diversity sections from one degree scan.
    pub fn scan_degrees(&mut self, family: &Family, regular: bool, diversity: bool) -> DegreeProfile {
        let profile = degree_profile(family);
        if regular && !family.is_empty() {
            self.regular = Some(regular_section(profile.regularity()));
        }
        if diversity {
            if let Ok(d) = DiversityResult::from_profile(&profile) {
                self.diversity = Some(DiversitySection {
                    value: num(d.diversity),
                    argmax_element: num(d.argmax_element),
                    max_degree: num(d.max_degree),
                });
            }
        }
        profile
    }
}

pub fn intersecting_section(verdict: &Intersection) -> IntersectingSection {
    IntersectingSection {
        holds: verdict.holds(),
        witness: verdict.witness().map(|(a, b)| [a.to_string(), b.to_string()]),
    }
}

pub fn regular_section(regularity: Regularity) -> RegularSection {
    match regularity {
        Regularity::Regular { degree } => RegularSection {
            holds: true,
            degree: Some(num(degree)),
            witness: None,
        },
        Regularity::Irregular {
            element,
            degree,
            other_element,
            other_degree,
        } => RegularSection {
            holds: false,
            degree: None,
            witness: Some(DegreeWitness {
                element: num(element),
                degree: num(degree),
                other_element: num(other_element),
                other_degree: num(other_degree),
            }),
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BonferroniLine {
    pub i: String,
    pub middle: String,
    #[serde(rename = "final")]
    pub final_bound: String,
    pub chain_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum BoundsReport {
    Qk {
        schema: &'static str,
        k: String,
        n: String,
        qk_size: String,
        qk_degree: String,
        div_qk: String,
        pk_diversity: String,
    },
    Plane {
        schema: &'static str,
        q: String,
        n: String,
        k: String,
        div_qk: String,
        theorem22_rhs: String,
        bonferroni: Vec<BonferroniLine>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchJson {
    pub schema: &'static str,
    pub method: &'static str,
    pub ground_n: String,
    pub best_diversity: String,
    pub visited: String,
    pub accepted: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<String>,
    pub reference_div_qk: String,
    pub checks: Vec<CheckLine>,
    pub all_pass: bool,
    pub volatile: Volatile,
}

#[derive(Debug, Clone, Serialize)]
pub struct LineJson {
    pub dual: String,
    pub points: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaneJson {
    pub schema: &'static str,
    pub q: String,
    pub n: String,
    pub line_size: String,
    pub points: Vec<String>,
    pub lines: Vec<LineJson>,
    pub checks: Vec<CheckLine>,
    pub all_pass: bool,
    pub volatile: Volatile,
}
