//! Assembled analysis reports for one (semigroup, ideal) pair, serializable
//! to JSON and renderable as text.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{bh0_vanishes, bockstein_table, CohomologyError, CohomologyTable, DepthSummary, depth_xi_amp};
use crate::filtration::{FiltrationData, FiltrationError, HilbertData};
use crate::policy::StabilizationPolicy;
use crate::semigroup::{NumericalSemigroup, SemigroupError, SemigroupIdeal};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub n: u32,
    pub exponents: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrSummary {
    pub amp: u32,
    pub horizon: u32,
    pub certified: bool,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub bh0_vanishes: bool,
    pub depth: u32,
    pub xi: u32,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerClosureVerdict {
    pub n: u32,
    pub integrally_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub semigroup: Vec<u64>,
    pub frobenius: i64,
    pub conductor: u64,
    pub ideal: Vec<u64>,
    pub colength: u64,
    pub hilbert: HilbertData,
    pub ratliff_rush: RrSummary,
    pub cohomology: CohomologyTable,
    pub flags: Flags,
    /// `e1 − e0 + ℓ(A/I)`, the boundary quantity for the `e2` equality.
    pub chi1: i64,
    pub integrally_closed_powers: Vec<PowerClosureVerdict>,
    pub policy: StabilizationPolicy,
}

const CLOSED_POWER_WINDOW: u32 = 5;

pub fn build_report(
    semigroup_gens: &[u64],
    ideal_exps: &[u64],
    policy: &StabilizationPolicy,
) -> Result<ReportDocument, ReportError> {
    let sg = NumericalSemigroup::from_generators(semigroup_gens)?;
    let ideal = SemigroupIdeal::from_exponents(sg.clone(), ideal_exps)?;
    report_for_ideal(ideal, policy)
}

pub fn report_for_ideal(
    ideal: SemigroupIdeal,
    policy: &StabilizationPolicy,
) -> Result<ReportDocument, ReportError> {
    let sg = ideal.semigroup().clone();
    let colength = ideal.colength();
    let ideal_gens = ideal.minimal_generators();
    let fd = FiltrationData::analyze(ideal, policy)?;

    let discrepancies: Vec<Discrepancy> = (1..=fd.rr.amp)
        .map(|n| Discrepancy { n, exponents: fd.rr.discrepancy(&fd.cache, n) })
        .filter(|d| !d.exponents.is_empty())
        .collect();

    let cohomology = bockstein_table(&fd)?;
    let DepthSummary { depth, xi, amp } = depth_xi_amp(&fd);
    let flags = Flags {
        bh0_vanishes: bh0_vanishes(&fd),
        depth,
        xi,
        certified: fd.rr.certified,
    };
    let chi1 = fd.hilbert.e[1] - fd.hilbert.e[0] + colength as i64;
    let integrally_closed_powers = (1..=CLOSED_POWER_WINDOW)
        .map(|n| PowerClosureVerdict {
            n,
            integrally_closed: fd.cache.power(n).is_integrally_closed(),
        })
        .collect();

    Ok(ReportDocument {
        schema_version: 1,
        semigroup: sg.generators().to_vec(),
        frobenius: sg.frobenius(),
        conductor: sg.conductor(),
        ideal: ideal_gens,
        colength,
        hilbert: fd.hilbert.clone(),
        ratliff_rush: RrSummary {
            amp,
            horizon: fd.rr.horizon,
            certified: fd.rr.certified,
            discrepancies,
        },
        cohomology,
        flags,
        chi1,
        integrally_closed_powers,
        policy: *policy,
    })
}

fn table_line(out: &mut String, name: &str, table: &[u64]) {
    out.push_str(&format!("  {:6}", name));
    for v in table {
        out.push_str(&format!(" {:>3}", v));
    }
    out.push('\n');
}

pub fn render_text(report: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "ring: k[[t^a]] for a in <{}>  (frobenius {}, conductor {})\n",
        report
            .semigroup
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(","),
        report.frobenius,
        report.conductor
    ));
    out.push_str(&format!(
        "ideal: exponents {:?}  colength {}\n",
        report.ideal, report.colength
    ));
    out.push_str(&format!(
        "hilbert: H = {:?}  N = {}  h = {:?}  e = {:?}\n",
        report.hilbert.table, report.hilbert.stabilization, report.hilbert.h, report.hilbert.e
    ));
    out.push_str(&format!(
        "ratliff-rush: amp {}  horizon {}  certified {}\n",
        report.ratliff_rush.amp, report.ratliff_rush.horizon, report.ratliff_rush.certified
    ));
    for d in &report.ratliff_rush.discrepancies {
        out.push_str(&format!("  closure gap at n = {}: exponents {:?}\n", d.n, d.exponents));
    }
    let c = &report.cohomology;
    out.push_str(&format!("cohomology window [{}, {}]:\n", c.lo, c.hi));
    table_line(&mut out, "h0L", &c.h0l);
    table_line(&mut out, "h0G", &c.h0g);
    table_line(&mut out, "h0L1", &c.h0l1);
    table_line(&mut out, "h1G", &c.h1g);
    table_line(&mut out, "kerB0", &c.ker_b0);
    table_line(&mut out, "imB0", &c.im_b0);
    table_line(&mut out, "BH0", &c.bh0);
    table_line(&mut out, "BH1", &c.bh1);
    out.push_str(&format!(
        "  tails: h1G = bh1 = {} below degree 0; all tables 0 above the window\n",
        c.e0
    ));
    out.push_str(&format!("BH0 total length: {}\n", c.bh0_total));
    out.push_str(&format!(
        "flags: bh0_vanishes {}  depth {}  xi {}  certified {}\n",
        report.flags.bh0_vanishes, report.flags.depth, report.flags.xi, report.flags.certified
    ));
    out.push_str(&format!("chi1 (e1 - e0 + colength): {}\n", report.chi1));
    for v in &report.integrally_closed_powers {
        out.push_str(&format!(
            "  I^{} integrally closed: {}\n",
            v.n, v.integrally_closed
        ));
    }
    out.push_str(&format!(
        "policy: consecutive {}  chain_cap {}  horizon_cap {}\n",
        report.policy.consecutive, report.policy.chain_cap, report.policy.horizon_cap
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_roundtrips_through_json() {
        let report = build_report(&[5, 6], &[10, 11], &StabilizationPolicy::default()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
        assert!(!report.flags.bh0_vanishes);
        assert_eq!(report.flags.depth, 0);
    }

    #[test]
    fn principal_report_values() {
        let report = build_report(&[5, 6], &[5], &StabilizationPolicy::default()).unwrap();
        assert_eq!(report.hilbert.e, [5, 0, 0]);
        assert!(report.flags.bh0_vanishes);
        assert_eq!(report.flags.depth, 1);
        assert_eq!(report.chi1, 0 - 5 + 5);
        let text = render_text(&report);
        assert!(text.contains("bh0_vanishes true"));
    }
}
