use anyhow::{anyhow, bail, Result};
use liaison_core::fmodule::{is_isomorphic, is_surjective_on, random_hom, IsoResult, PresentedModule};
use liaison_core::hilbert::Cohomology;
use liaison_core::liaison::*;
use liaison_core::matlink::{reduce, verify_matrix_link_modules, MatrixRecord};
use liaison_core::resolution::{exchange, minimal_free_resolution, phi_psi, stable_equiv, StableVerdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::defs::Definitions;
use crate::session::{LinkRecord, Record, SessionLog};

const ISO_TRIES: usize = 8;
const HOM_TRIES: usize = 16;

/// Result of one command.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// `false` when a verification failed.
    pub ok: bool,
    pub record: Option<Record>,
}

impl Outcome {
    fn report(command: &str, text: String, json: Value, ok: bool) -> Outcome {
        let record = Record::Report {
            command: command.to_string(),
            report: json.clone(),
        };
        Outcome {
            text,
            json,
            ok,
            record: Some(record),
        }
    }
}

pub struct Ctx<'a> {
    pub defs: &'a Definitions,
    pub seed: u64,
    pub window: Option<(i64, i64)>,
    pub rng: ChaCha8Rng,
}

impl<'a> Ctx<'a> {
    pub fn new(defs: &'a Definitions, seed: u64, window: Option<(i64, i64)>) -> Ctx<'a> {
        Ctx {
            defs,
            seed,
            window,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn window_for(&self, mods: &[&PresentedModule]) -> (i64, i64) {
        self.window
            .unwrap_or_else(|| joint_window(&mods.iter().map(|m| m.hilbert()).collect::<Vec<_>>()))
    }
}

fn iso_label(iso: &IsoResult) -> &'static str {
    match iso {
        IsoResult::Yes(_) => "YES",
        IsoResult::No(_) => "NO",
        IsoResult::Unknown(_) => "UNKNOWN",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn resolve(ctx: &mut Ctx, name: &str) -> Result<Outcome> {
    let m = ctx.defs.module(name)?;
    let res = minimal_free_resolution(&m);
    let degrees: Vec<Vec<i64>> = (0..=res.length()).map(|i| res.degrees(i)).collect();
    let mut text = format!("minimal free resolution of {name}, length {}\n", res.length());
    for (i, d) in degrees.iter().enumerate() {
        text += &format!("  F{i}: {d:?}\n");
    }
    let json = json!({
        "module": name,
        "length": res.length(),
        "degrees": degrees,
        "betti": res.betti(),
        "is_complex": res.is_complex(),
    });
    let ok = res.is_complex();
    Ok(Outcome::report("resolve", text, json, ok))
}

pub fn hilbert(ctx: &mut Ctx, name: &str) -> Result<Outcome> {
    let m = ctx.defs.module(name)?;
    let h = m.hilbert();
    let (lo, hi) = ctx.window_for(&[&m]);
    let function: Vec<(i64, i64)> = (lo..=hi).map(|j| (j, m.hilbert_function(j))).collect();
    let coh = Cohomology::new(&m);
    let top = h.dim().unwrap_or(0);
    let local: Vec<Vec<(i64, i64)>> = (0..=top)
        .map(|i| (lo..=hi).map(|j| (j, coh.local_hf(i, j))).filter(|&(_, d)| d != 0).collect())
        .collect();
    let s = h.summary();
    let text = format!(
        "{name}: dim {:?}, degree {}, h-vector {:?}, r {:?}, a {:?}\n  HF on [{lo}, {hi}]: {:?}\n",
        s.dim,
        s.degree,
        s.h,
        s.r,
        s.a,
        function.iter().map(|p| p.1).collect::<Vec<_>>()
    );
    let json = json!({
        "module": name,
        "summary": s,
        "window": [lo, hi],
        "function": function,
        "local_cohomology": local,
    });
    Ok(Outcome::report("hilbert", text, json, true))
}

pub fn qgor_check(ctx: &mut Ctx, name: &str) -> Result<Outcome> {
    let c = ctx.defs.module(name)?;
    let verdict = certify_quasi_gorenstein(&c, &mut ctx.rng)?;
    let (json, text, ok) = match verdict {
        QGVerdict::Yes(cert) => {
            let h = cert.module.hilbert();
            let formula = 1 - h.r().unwrap_or(0) - h.a().unwrap_or(0);
            let ok = cert.verify() && cert.t == formula;
            let text = format!(
                "{name}: YES, codim {}, t = {} (1 - r - a = {formula}), certificate {}\n",
                cert.codim,
                cert.t,
                if ok { "verified" } else { "FAILED" }
            );
            let json = json!({
                "module": name,
                "verdict": "YES",
                "codim": cert.codim,
                "t": cert.t,
                "ext_twist": cert.ext_twist,
                "r": h.r(),
                "a": h.a(),
                "certificate_ok": ok,
            });
            (json, text, ok)
        }
        QGVerdict::No(why) => (
            json!({"module": name, "verdict": "NO", "reason": why}),
            format!("{name}: NO ({why})\n"),
            true,
        ),
        QGVerdict::Unknown(why) => (
            json!({"module": name, "verdict": "UNKNOWN", "reason": why}),
            format!("{name}: UNKNOWN ({why})\n"),
            true,
        ),
    };
    Ok(Outcome::report("qgor-check", text, json, ok))
}

/// Link `m` by the named module, or by an automatic choice.
fn make_link(ctx: &mut Ctx, m: &PresentedModule, by: Option<&str>) -> Result<LinkStep> {
    let Some(by) = by else {
        return Ok(auto_link(m, &mut ctx.rng)?);
    };
    let c = ctx.defs.module(by)?;
    let cert = certify_quasi_gorenstein(&c, &mut ctx.rng)?.cert()?;
    for _ in 0..HOM_TRIES {
        let Some(phi) = random_hom(&cert.module, m, 0, &mut ctx.rng) else { break };
        if is_surjective_on(&phi, m) {
            return Ok(link(m, &cert, &phi)?);
        }
    }
    bail!("found no epimorphism from `{by}` onto the module in degree zero")
}

pub fn link_cmd(ctx: &mut Ctx, name: &str, by: Option<&str>) -> Result<Outcome> {
    let m = ctx.defs.module(name)?;
    let step = make_link(ctx, &m, by)?;
    let rep = verify_link_formulas(&step)?;
    let seq = step.check_sequence();
    let ok = rep.all_ok() && seq;
    let check = format!("{} = {} + {}", rep.deg_c, rep.deg_m, rep.deg_n);
    let text = format!(
        "linked {name} by {}: deg check {check} ({}), t = {}, formulas {}\n  result generators {:?}\n",
        by.unwrap_or("an automatic linking module"),
        yes_no(rep.degree_ok),
        step.cert.t,
        if ok { "ok" } else { "FAILED" },
        step.result.gen_degrees(),
    );
    let json = json!({
        "module": name,
        "by": by.unwrap_or("auto"),
        "deg_check": check,
        "t": step.cert.t,
        "formulas": rep,
        "sequence_ok": seq,
        "linking": MatrixRecord::from_matrix(step.cert.module.presentation()),
        "result": MatrixRecord::from_matrix(step.result.presentation()),
    });
    let record = Record::Link {
        seed: ctx.seed,
        step: LinkRecord::of(&step),
    };
    Ok(Outcome {
        text,
        json,
        ok,
        record: Some(record),
    })
}

pub fn double_link(ctx: &mut Ctx, name: &str, by: Option<&str>) -> Result<Outcome> {
    let m = ctx.defs.module(name)?;
    let first = make_link(ctx, &m, by)?;
    let rep = double_link_check(first, &mut ctx.rng)?;
    let shift = even_shift(&rep.first, &rep.second);
    let ok = rep.consistent();
    let text = format!(
        "double link of {name}: Hilbert {}, Betti {}, even identity {}, isomorphism {}\n",
        yes_no(rep.hilbert_ok),
        yes_no(rep.betti_ok),
        yes_no(rep.even_identity_ok),
        iso_label(&rep.iso)
    );
    let json = json!({
        "module": name,
        "by": by.unwrap_or("auto"),
        "hilbert_ok": rep.hilbert_ok,
        "betti_ok": rep.betti_ok,
        "even_identity_ok": rep.even_identity_ok,
        "iso": iso_label(&rep.iso),
        "shift": shift,
    });
    let record = Record::Chain {
        command: "double-link".into(),
        seed: ctx.seed,
        steps: vec![LinkRecord::of(&rep.first), LinkRecord::of(&rep.second)],
    };
    Ok(Outcome {
        text,
        json,
        ok,
        record: Some(record),
    })
}

pub fn exchange_cmd(ctx: &mut Ctx, name: &str, by: Option<&str>) -> Result<Outcome> {
    let m = ctx.defs.module(name)?;
    let step = make_link(ctx, &m, by)?;
    let ex = exchange(&step)?;
    let q = &ex.q_type;
    let window = ctx.window_for(&[&step.source, &step.result, &q.q]);
    let euler = q.euler_ok(&step.result);
    let band = q.band_vanishes();
    let coh = q.cohomology_matches(&step.result, window);
    let ok = euler && band && coh && ex.e_type.euler_ok(&step.result);
    let text = format!(
        "Q-type resolution of the link of {name}: codim {}, G0 {:?}, Q generators {:?}\n  Euler {}, band vanishes {}, cohomology on [{}, {}] {}\n",
        q.codim,
        q.g0,
        q.q.gen_degrees(),
        yes_no(euler),
        yes_no(band),
        window.0,
        window.1,
        yes_no(coh),
    );
    let json = json!({
        "module": name,
        "by": by.unwrap_or("auto"),
        "codim": q.codim,
        "g0": q.g0,
        "q": MatrixRecord::from_matrix(q.q.presentation()),
        "q_map": MatrixRecord::from_matrix(&q.q_map),
        "tail": q.tail,
        "e_type": { "free": ex.e_type.free, "tail": ex.e_type.tail.gen_degrees() },
        "euler_ok": euler,
        "band_vanishes": band,
        "cohomology_matches": coh,
        "window": [window.0, window.1],
    });
    Ok(Outcome::report("exchange", text, json, ok))
}

pub fn phi_psi_cmd(ctx: &mut Ctx, name: &str) -> Result<Outcome> {
    let m = ctx.defs.module(name)?;
    let pp = phi_psi(&m, &mut ctx.rng)?;
    let (phi, psi) = (pp.phi.summary(), pp.psi.summary());
    let text = format!(
        "{name}: Phi core generators {:?} (stably free {}), Psi core generators {:?} (stably free {})\n",
        phi.core_generators,
        yes_no(phi.stably_free),
        psi.core_generators,
        yes_no(psi.stably_free)
    );
    let json = json!({ "module": name, "phi": phi, "psi": psi });
    Ok(Outcome::report("phi-psi", text, json, true))
}

pub fn stable_equiv_cmd(ctx: &mut Ctx, name: &str, other: &str) -> Result<Outcome> {
    let (m, n) = (ctx.defs.module(name)?, ctx.defs.module(other)?);
    let (json, text) = match stable_equiv(&m, &n, &mut ctx.rng) {
        StableVerdict::Equivalent { shift, .. } => (
            json!({"module": name, "other": other, "verdict": "CERTIFIED_EQUIVALENT", "shift": shift}),
            format!("{name} and {other}: stably equivalent up to the shift {shift}\n"),
        ),
        StableVerdict::Distinct(why) => (
            json!({"module": name, "other": other, "verdict": "DISTINCT", "reason": why}),
            format!("{name} and {other}: distinct ({why})\n"),
        ),
        StableVerdict::Unknown(why) => (
            json!({"module": name, "other": other, "verdict": "UNKNOWN", "reason": why}),
            format!("{name} and {other}: unknown ({why})\n"),
        ),
    };
    Ok(Outcome::report("stable-equiv", text, json, true))
}

pub fn matreduce(ctx: &mut Ctx, name: &str) -> Result<Outcome> {
    let a = ctx.defs.matrix(name)?;
    let chain = reduce(a)?;
    let cert = chain.certificate();
    let cert_ok = cert.verify().is_ok();
    let reports = chain
        .stages
        .iter()
        .map(|st| verify_matrix_link_modules(&st.step))
        .collect::<liaison_core::Result<Vec<_>>>()?;
    let ok = chain.verify() && cert_ok && reports.iter().all(|r| r.all_ok());
    let mut text = format!("{name}: reduced in {} link(s) to {}\n", chain.len(), chain.terminal.get(0, 0));
    for (k, st) in cert.stages.iter().enumerate() {
        text += &format!("  stage {k}: lambda = {}, S = {:?}\n", st.lambda, st.s.rows);
    }
    text += &format!("  verification {}\n", if ok { "ok" } else { "FAILED" });
    let json = json!({
        "matrix": name,
        "length": chain.len(),
        "terminal": format!("{}", chain.terminal.get(0, 0)),
        "module_reports": reports,
        "verified": ok,
        "certificate": cert,
    });
    Ok(Outcome {
        text,
        json,
        ok,
        record: Some(Record::Matreduce { certificate: cert }),
    })
}

pub fn sm_link(ctx: &mut Ctx, i: &str, j: &str, by: &str) -> Result<Outcome> {
    let d = ctx.defs;
    let linked = sm_link_ideals(&d.ring, d.ideal(i)?, d.ideal(j)?, d.ideal(by)?, &mut ctx.rng)?;
    let text = format!("{i} and {j} {} linked by {by}\n", if linked { "are" } else { "are not" });
    let json = json!({"ideal": i, "other": j, "by": by, "linked": linked});
    Ok(Outcome::report("sm-link", text, json, true))
}

fn chain_outcome(ctx: &mut Ctx, command: &str, chain: &LinkChain, target: &PresentedModule) -> Outcome {
    let end = chain.end().cloned().unwrap_or_else(|| target.clone());
    let iso = is_isomorphic(&end, target, ISO_TRIES, &mut ctx.rng);
    let connected = chain.is_connected();
    let ok = connected && !iso.is_no();
    let text = format!(
        "{command}: {} link(s), composite shift {}, connected {}, end isomorphic to target {}\n",
        chain.len(),
        chain.composite_shift(),
        yes_no(connected),
        iso_label(&iso)
    );
    let json = json!({
        "length": chain.len(),
        "composite_shift": chain.composite_shift(),
        "connected": connected,
        "end_iso": iso_label(&iso),
        "bridges": chain.bridges.iter().map(iso_label).collect::<Vec<_>>(),
    });
    let record = Record::Chain {
        command: command.into(),
        seed: ctx.seed,
        steps: chain.steps.iter().map(LinkRecord::of).collect(),
    };
    Outcome {
        text,
        json,
        ok,
        record: Some(record),
    }
}

pub fn shift_chain(ctx: &mut Ctx, name: &str, shift: i64) -> Result<Outcome> {
    let m = ctx.defs.module(name)?;
    let chain = shift_link_chain(&m, shift, &mut ctx.rng)?;
    Ok(chain_outcome(ctx, "shift-chain", &chain, &m.twist(shift)))
}

pub fn split_chain(ctx: &mut Ctx, name: &str, summand: &str) -> Result<Outcome> {
    let m = ctx.defs.module(name)?;
    let d = ctx.defs.module(summand)?;
    let chain = split_summand_chain(&m, &d, &mut ctx.rng)?;
    Ok(chain_outcome(ctx, "split-chain", &chain, &m))
}

/// Re-verify every record of a session from the log alone.
pub fn verify_chain(log: &SessionLog) -> Result<Outcome> {
    let ring = log.ring.ring()?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for (k, rec) in log.records.iter().enumerate() {
        let res = rec.verify(&ring);
        let line = match &res {
            Ok(()) => format!("  record {k} ({}): ok\n", rec.kind()),
            Err(e) => format!("  record {k} ({}): FAILED: {e:#}\n", rec.kind()),
        };
        text += &line;
        ok &= res.is_ok();
        rows.push(json!({
            "index": k,
            "kind": rec.kind(),
            "ok": res.is_ok(),
            "error": res.err().map(|e| format!("{e:#}")),
        }));
    }
    if log.records.is_empty() {
        return Err(anyhow!("session has no records"));
    }
    text = format!("{} record(s), {}\n", log.records.len(), if ok { "all verified" } else { "verification FAILED" }) + &text;
    let json = json!({ "records": rows, "verified": ok, "session_seed": log.seed });
    Ok(Outcome {
        text,
        json,
        ok,
        record: None,
    })
}
