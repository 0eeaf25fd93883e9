//! Check certificates: one record per verified instance, plus per
//! (type, check) summaries.
//!
//! Wall-clock timing is carried for reporting but deliberately kept out of
//! the serialized stream, which must be byte-identical across runs.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::rootsystem::TypeLabel;
use crate::scalar::GoldenInt;
use crate::{Error, Result};

/// Stable kebab-case identifiers for every check the suite can run.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CheckKind {
    PropA,
    PropB,
    PropC,
    OshimaX,
    Dihedral,
    RootstringA,
    RootstringB,
    RootstringC,
    Decomposition,
    ChamberVector,
    RescaleInvariance,
    CounterexampleA3,
    FoldTable,
    FoldType,
    FoldReflections,
    FoldLength,
    FoldPhi,
    FoldChamber,
    FoldPhiPrime,
}

impl CheckKind {
    pub const ALL: [CheckKind; 19] = [
        CheckKind::PropA,
        CheckKind::PropB,
        CheckKind::PropC,
        CheckKind::OshimaX,
        CheckKind::Dihedral,
        CheckKind::RootstringA,
        CheckKind::RootstringB,
        CheckKind::RootstringC,
        CheckKind::Decomposition,
        CheckKind::ChamberVector,
        CheckKind::RescaleInvariance,
        CheckKind::CounterexampleA3,
        CheckKind::FoldTable,
        CheckKind::FoldType,
        CheckKind::FoldReflections,
        CheckKind::FoldLength,
        CheckKind::FoldPhi,
        CheckKind::FoldChamber,
        CheckKind::FoldPhiPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::PropA => "prop-a",
            CheckKind::PropB => "prop-b",
            CheckKind::PropC => "prop-c",
            CheckKind::OshimaX => "oshima-x",
            CheckKind::Dihedral => "dihedral",
            CheckKind::RootstringA => "rootstring-a",
            CheckKind::RootstringB => "rootstring-b",
            CheckKind::RootstringC => "rootstring-c",
            CheckKind::Decomposition => "decomposition",
            CheckKind::ChamberVector => "chamber-vector",
            CheckKind::RescaleInvariance => "rescale-invariance",
            CheckKind::CounterexampleA3 => "counterexample-a3",
            CheckKind::FoldTable => "fold-table",
            CheckKind::FoldType => "fold-type",
            CheckKind::FoldReflections => "fold-reflections",
            CheckKind::FoldLength => "fold-length",
            CheckKind::FoldPhi => "fold-phi",
            CheckKind::FoldChamber => "fold-chamber",
            CheckKind::FoldPhiPrime => "fold-phi-prime",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown check name: {s}")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertStatus {
    Pass,
    Fail,
    Skipped,
}

impl CertStatus {
    pub fn name(self) -> &'static str {
        match self {
            CertStatus::Pass => "pass",
            CertStatus::Fail => "fail",
            CertStatus::Skipped => "skipped",
        }
    }
}

impl fmt::Display for CertStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The outcome of one check instance. A failing certificate always names
/// a witness; construction enforces that.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub check: CheckKind,
    pub label: TypeLabel,
    /// 1-based simple indices of the parabolic subset, when the check has one.
    pub j: Option<Vec<usize>>,
    /// Coefficient tuple of the distinguished root, when the check has one.
    pub alpha: Option<Vec<GoldenInt>>,
    /// Short instance descriptor for checks keyed by more than (J, alpha).
    pub instance: Option<String>,
    pub status: CertStatus,
    pub witness: Option<String>,
    /// Wall-clock cost; excluded from serialization to keep streams
    /// deterministic.
    pub elapsed: Option<Duration>,
}

impl Certificate {
    pub fn pass(check: CheckKind, label: TypeLabel) -> Self {
        Certificate {
            check,
            label,
            j: None,
            alpha: None,
            instance: None,
            status: CertStatus::Pass,
            witness: None,
            elapsed: None,
        }
    }

    pub fn fail(check: CheckKind, label: TypeLabel, witness: impl Into<String>) -> Self {
        Certificate {
            witness: Some(witness.into()),
            status: CertStatus::Fail,
            ..Certificate::pass(check, label)
        }
    }

    pub fn skipped(check: CheckKind, label: TypeLabel, reason: impl Into<String>) -> Self {
        Certificate {
            witness: Some(reason.into()),
            status: CertStatus::Skipped,
            ..Certificate::pass(check, label)
        }
    }

    pub fn with_j(mut self, j_one_based: Vec<usize>) -> Self {
        self.j = Some(j_one_based);
        self
    }

    pub fn with_alpha(mut self, alpha: Vec<GoldenInt>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_instance(mut self, instance: impl Into<String>) -> Self {
        self.instance = Some(instance.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == CertStatus::Pass
    }

    fn scalar_json(&self, x: GoldenInt) -> serde_json::Value {
        if self.label.golden() {
            serde_json::json!([x.a, x.b])
        } else {
            serde_json::json!(x.a)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        debug_assert!(
            self.status != CertStatus::Fail || self.witness.is_some(),
            "failing certificate must carry a witness"
        );
        let mut obj = serde_json::Map::new();
        obj.insert("check".into(), self.check.name().into());
        obj.insert("label".into(), self.label.to_string().into());
        obj.insert(
            "j".into(),
            match &self.j {
                Some(j) => serde_json::json!(j),
                None => serde_json::Value::Null,
            },
        );
        obj.insert(
            "alpha".into(),
            match &self.alpha {
                Some(a) => {
                    serde_json::Value::Array(a.iter().map(|&c| self.scalar_json(c)).collect())
                }
                None => serde_json::Value::Null,
            },
        );
        obj.insert(
            "instance".into(),
            match &self.instance {
                Some(s) => serde_json::json!(s),
                None => serde_json::Value::Null,
            },
        );
        obj.insert("status".into(), self.status.name().into());
        obj.insert(
            "witness".into(),
            match &self.witness {
                Some(w) => serde_json::json!(w),
                None => serde_json::Value::Null,
            },
        );
        serde_json::Value::Object(obj)
    }

    /// Flat string fields for the CSV writer, in column order
    /// check, label, j, alpha, instance, status, witness.
    pub fn csv_record(&self) -> [String; 7] {
        let j = self
            .j
            .as_ref()
            .map(|j| {
                j.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default();
        let alpha = self
            .alpha
            .as_ref()
            .map(|a| {
                a.iter()
                    .map(|c| {
                        if self.label.golden() {
                            format!("[{},{}]", c.a, c.b)
                        } else {
                            c.a.to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default();
        [
            self.check.name().to_string(),
            self.label.to_string(),
            j,
            alpha,
            self.instance.clone().unwrap_or_default(),
            self.status.name().to_string(),
            self.witness.clone().unwrap_or_default(),
        ]
    }
}

/// Per (type, check) tallies, emitted after all certificates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn add(&mut self, status: CertStatus) {
        match status {
            CertStatus::Pass => self.pass += 1,
            CertStatus::Fail => self.fail += 1,
            CertStatus::Skipped => self.skipped += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped
    }

    pub fn to_json(&self, label: TypeLabel, check: CheckKind) -> serde_json::Value {
        serde_json::json!({
            "summary": true,
            "label": label.to_string(),
            "check": check.name(),
            "pass": self.pass,
            "fail": self.fail,
            "skipped": self.skipped,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_roundtrip() {
        for k in CheckKind::ALL {
            let name = k.name();
            assert_eq!(name.parse::<CheckKind>().unwrap(), k);
            assert!(name.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-'));
        }
        assert!("prop-z".parse::<CheckKind>().is_err());
        assert_eq!(CheckKind::ALL.len(), 19);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = Certificate::pass(CheckKind::PropA, TypeLabel::A(3))
            .with_j(vec![1, 3])
            .with_alpha(vec![
                GoldenInt::from_int(1),
                crate::scalar::ZERO,
                crate::scalar::ZERO,
            ]);
        let doc = cert.to_json();
        assert_eq!(doc["check"], "prop-a");
        assert_eq!(doc["label"], "A3");
        assert_eq!(doc["j"], serde_json::json!([1, 3]));
        assert_eq!(doc["alpha"], serde_json::json!([1, 0, 0]));
        assert_eq!(doc["status"], "pass");
        assert_eq!(doc["witness"], serde_json::Value::Null);

        let golden = Certificate::fail(CheckKind::FoldTable, TypeLabel::H3, "bad pair")
            .with_alpha(vec![GoldenInt::new(1, 1)]);
        let doc = golden.to_json();
        assert_eq!(doc["alpha"], serde_json::json!([[1, 1]]));
        assert_eq!(doc["status"], "fail");
        assert_eq!(doc["witness"], "bad pair");
    }

    #[test]
    fn summary_tallies() {
        let mut s = Summary::default();
        s.add(CertStatus::Pass);
        s.add(CertStatus::Pass);
        s.add(CertStatus::Fail);
        s.add(CertStatus::Skipped);
        assert_eq!((s.pass, s.fail, s.skipped, s.total()), (2, 1, 1, 4));
        let doc = s.to_json(TypeLabel::G2, CheckKind::Dihedral);
        assert_eq!(doc["summary"], true);
        assert_eq!(doc["pass"], 2);
    }

    #[test]
    fn csv_record_columns() {
        let cert = Certificate::skipped(CheckKind::PropA, TypeLabel::B(2), "alpha in Phi_J")
            .with_j(vec![1])
            .with_alpha(vec![GoldenInt::from_int(1), GoldenInt::from_int(0)]);
        let rec = cert.csv_record();
        assert_eq!(rec[0], "prop-a");
        assert_eq!(rec[1], "B2");
        assert_eq!(rec[2], "1");
        assert_eq!(rec[3], "1 0");
        assert_eq!(rec[5], "skipped");
        assert_eq!(rec[6], "alpha in Phi_J");
    }
}
