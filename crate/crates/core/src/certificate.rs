//! End-to-end certification: reduce, split into prime factors, and look for a
//! nontrivial longitude in each alternating factor.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::faces::{Colouring, FaceSet};
use crate::longitude::{longitude_word, normal_form};
use crate::presentation::{Presentation, PresentationStats, SmallCancellation};
use crate::solver::geodesic_reduce;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Nontrivial,
    Trivial,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub connected: bool,
    pub reduced: bool,
    pub prime: bool,
    pub alternating: bool,
}

impl Checks {
    pub fn of(d: &Diagram) -> Checks {
        Checks {
            connected: d.is_connected(),
            reduced: d.is_reduced(),
            prime: d.is_prime().unwrap_or(false),
            alternating: d.is_alternating(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub component: usize,
    pub slk: i64,
    pub double_length: usize,
    pub double_word: Word,
    pub meridian_word: Word,
    pub longitude_word: Word,
    pub geodesic_word: Word,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_form: Option<NormalFormRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormRecord {
    pub found: bool,
    pub word: Option<Word>,
    pub parity_changes: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub pd: String,
    pub crossings: usize,
    pub components: usize,
    pub checks: Checks,
    pub presentation: Option<PresentationStats>,
    pub small_cancellation: Option<SmallCancellation>,
    pub longitudes: Vec<ComponentRecord>,
    pub verdict: Verdict,
}

/// The first nonempty geodesic longitude.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub factor: usize,
    pub component: usize,
    pub geodesic_word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// SHA-256 of the canonical PD text of the input.
    pub digest: String,
    pub input: String,
    pub input_crossings: usize,
    pub reduced_crossings: usize,
    pub factors: Vec<FactorRecord>,
    pub verdict: Verdict,
    pub evidence: Option<Evidence>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Also search for longitude normal forms (diagnostic only).
    pub normal_form: bool,
}

pub fn certify(d: &Diagram) -> Result<Certificate> {
    certify_with(d, CertifyOptions::default())
}

pub fn certify_with(d: &Diagram, opts: CertifyOptions) -> Result<Certificate> {
    let input = d.to_string();
    let digest = hex::encode(Sha256::digest(input.as_bytes()));
    let reduced = d.reduce();
    let mut factors = Vec::new();
    for factor in reduced.split_factors() {
        factors.push(certify_factor(&factor, opts)?);
    }
    let verdict = if factors.iter().any(|f| f.verdict == Verdict::NotApplicable) {
        Verdict::NotApplicable
    } else if factors.iter().any(|f| f.verdict == Verdict::Nontrivial) {
        Verdict::Nontrivial
    } else {
        Verdict::Trivial
    };
    let evidence = factors.iter().enumerate().find_map(|(i, f)| {
        (f.verdict == Verdict::Nontrivial)
            .then(|| f.longitudes.iter().find(|c| !c.geodesic_word.is_empty()))
            .flatten()
            .map(|c| Evidence {
                factor: i,
                component: c.component,
                geodesic_word: c.geodesic_word.clone(),
            })
    });
    Ok(Certificate {
        digest,
        input,
        input_crossings: d.crossing_count(),
        reduced_crossings: reduced.crossing_count(),
        factors,
        verdict,
        evidence,
    })
}

fn certify_factor(d: &Diagram, opts: CertifyOptions) -> Result<FactorRecord> {
    let checks = Checks::of(d);
    let mut record = FactorRecord {
        pd: d.to_string(),
        crossings: d.crossing_count(),
        components: d.component_count(),
        checks,
        presentation: None,
        small_cancellation: None,
        longitudes: Vec::new(),
        verdict: Verdict::Trivial,
    };
    if d.crossing_count() == 0 {
        return Ok(record);
    }
    if !checks.alternating {
        record.verdict = Verdict::NotApplicable;
        return Ok(record);
    }
    let f = FaceSet::trace(d)?;
    let col = Colouring::checkerboard(&f);
    let p = Presentation::from_diagram(d, &f, &col)?;
    let sc = p.small_cancellation();
    record.presentation = Some(p.stats());
    record.small_cancellation = Some(sc);
    if !sc.holds() {
        return Err(Error::InternalInconsistency(format!(
            "reduced prime alternating factor {} fails C(4)-T(4)",
            record.pd
        )));
    }
    for c in 0..d.component_count() {
        let rep = longitude_word(d, &f, &col, c)?;
        let geodesic = geodesic_reduce(&rep.longitude_word, &p);
        let nf = if opts.normal_form {
            let w = normal_form(&rep, &p)?;
            Some(NormalFormRecord {
                found: w.is_some(),
                parity_changes: w.as_ref().map(Word::parity_changes),
                word: w,
            })
        } else {
            None
        };
        record.longitudes.push(ComponentRecord {
            component: c,
            slk: rep.slk,
            double_length: rep.double_length,
            double_word: rep.double_word,
            meridian_word: rep.meridian_word,
            longitude_word: rep.longitude_word,
            geodesic_word: geodesic,
            normal_form: nf,
        });
    }
    if record.longitudes.iter().all(|c| c.geodesic_word.is_empty()) {
        return Err(Error::InternalInconsistency(format!(
            "every longitude of the alternating factor {} reduces to the identity",
            record.pd
        )));
    }
    record.verdict = Verdict::Nontrivial;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn cert(text: &str) -> Certificate {
        certify(&parse_pd(text).unwrap()).unwrap()
    }

    #[test]
    fn unknots_are_trivial() {
        for text in ["PD[O]", "PD[X(2,2,1,1)]", "PD[]"] {
            let c = cert(text);
            assert_eq!(c.verdict, Verdict::Trivial, "{text}");
            assert!(c.evidence.is_none());
            assert!(c.factors.iter().all(|f| f.crossings == 0));
        }
    }

    #[test]
    fn trefoil_is_nontrivial() {
        let c = cert("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]");
        assert_eq!(c.verdict, Verdict::Nontrivial);
        let ev = c.evidence.as_ref().unwrap();
        assert!(!ev.geodesic_word.is_empty());
        let f = &c.factors[0];
        assert_eq!(
            f.checks,
            Checks {
                connected: true,
                reduced: true,
                prime: true,
                alternating: true
            }
        );
        assert_eq!(
            f.small_cancellation,
            Some(SmallCancellation {
                pieces_max_len: 1,
                c4: true,
                t4: true
            })
        );
        assert_eq!(c.digest.len(), 64);
    }

    #[test]
    fn non_alternating_is_not_applicable() {
        let c = cert("PD[X(4,2,5,1), X(3,6,4,1), X(5,2,6,3)]");
        assert_eq!(c.verdict, Verdict::NotApplicable);
        assert!(c.evidence.is_none());
    }

    #[test]
    fn split_link_with_circle() {
        let c = cert("PD[O, X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]");
        assert_eq!(c.verdict, Verdict::Nontrivial);
        assert_eq!(c.factors.len(), 2);
        assert_eq!(c.factors[1].verdict, Verdict::Trivial);
    }

    #[test]
    fn deterministic_json() {
        let d = parse_pd("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]").unwrap();
        let opts = CertifyOptions { normal_form: true };
        let a = serde_json::to_string(&certify_with(&d, opts).unwrap()).unwrap();
        let b = serde_json::to_string(&certify_with(&d, opts).unwrap()).unwrap();
        assert_eq!(a, b);
        let back: Certificate = serde_json::from_str(&a).unwrap();
        assert_eq!(back.verdict, Verdict::Nontrivial);
        assert!(a.contains("\"C4\":true"));
    }
}
