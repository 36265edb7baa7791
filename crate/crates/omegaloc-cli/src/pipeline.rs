//! The end-to-end run: composition, synthesis, localization, verification,
//! and the files it leaves behind.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use omegaloc_core::ops::reachable_trim;
use omegaloc_core::{Automaton, Kind, StateId};
use omegaloc_local::{ControllerKind, LocalController, Localization, Part};
use omegaloc_synth::{compose_plant, compose_spec, OmegaSupervisor};
use omegaloc_verify::{
    check_controller_properties, check_finite_equivalence, check_infinite_equivalence, run_stages, Artifacts,
    EquivalenceReport, VerifyError,
};

use crate::config::PipelineConfig;
use crate::error::{CliError, Result};
use crate::io::{load, load_all, save, save_dot, write_json};
use crate::summary::{by_label, disablements};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub dot_dir: Option<PathBuf>,
    pub lassos: usize,
    pub seed: u64,
}

impl RunOptions {
    pub fn from_config(cfg: &PipelineConfig) -> Self {
        RunOptions {
            out_dir: cfg.out_dir.clone(),
            dot_dir: cfg.dot.then(|| cfg.out_dir.join("dot")),
            lassos: cfg.lassos,
            seed: cfg.seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub states: usize,
    pub transitions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub buchi: Option<usize>,
    /// `[|R|, |I|]` per pair.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rabin: Vec<[usize; 2]>,
}

impl Counts {
    pub fn of(a: &Automaton) -> Self {
        Counts {
            states: a.num_states(),
            transitions: a.num_transitions(),
            buchi: (a.kind != Kind::Star).then_some(a.buchi.len()),
            rabin: a.rabin.iter().map(|p| [p.r.len(), p.i.len()]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub event: String,
    pub kind: ControllerKind,
    pub part: Part,
    pub states: usize,
    /// Parent supervisor states merged into each controller state.
    pub cells: Vec<Vec<StateId>>,
}

impl ManifestEntry {
    pub fn of(l: &LocalController) -> Self {
        ManifestEntry {
            file: format!("{}.aut", l.file_stem()),
            event: l.automaton.alphabet().label(l.event).to_string(),
            kind: l.kind,
            part: l.part,
            states: l.num_states(),
            cells: l.congruence.cells.clone(),
        }
    }
}

pub type Manifest = BTreeMap<String, ManifestEntry>;

pub fn manifest(controllers: &[LocalController]) -> Manifest {
    controllers.iter().map(|l| (l.file_stem(), ManifestEntry::of(l))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationSection {
    pub equivalence: EquivalenceReport,
    /// Controller stem → violating string.
    pub property_failures: BTreeMap<String, String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub plant: Counts,
    pub spec: Counts,
    pub sup_star: Counts,
    pub rabin_buchi: Counts,
    pub uncontrollable_exits: Vec<StateId>,
    pub controllability_subset: usize,
    /// Event → 𝒜 states where φ^𝒜 drops it.
    pub phi_drops: BTreeMap<String, Vec<StateId>>,
    pub sup_omega: Counts,
    /// Event → SUP^ω states where G^{f*} defines it and SUP^ω does not.
    pub sup_omega_disablements: BTreeMap<String, Vec<StateId>>,
    pub controllers: BTreeMap<String, usize>,
    pub undivided: BTreeMap<String, usize>,
    pub verification: VerificationSection,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.verification.passed
    }
}

/// Compose the plant components (fairness assumptions included) and the
/// safety specifications. With no specifications the plant's own
/// *-language is used.
pub fn compose(plant: &[Automaton], specs: &[Automaton]) -> Result<(Automaton, Automaton)> {
    let g = compose_plant(&plant.iter().collect::<Vec<_>>())?;
    let e = if specs.is_empty() {
        g.with_kind(Kind::Star).rename("E")
    } else {
        compose_spec(&specs.iter().collect::<Vec<_>>(), g.alphabet())?
    };
    Ok((g, e))
}

pub fn load_plant(files: &[PathBuf]) -> Result<Automaton> {
    let comps = load_all(files)?;
    if comps.len() == 1 && comps[0].kind != Kind::Star {
        return Ok(comps.into_iter().next().unwrap());
    }
    Ok(compose_plant(&comps.iter().collect::<Vec<_>>())?)
}

/// Run all stages from the files named in `cfg`.
pub fn synthesize(cfg: &PipelineConfig) -> Result<Artifacts> {
    let comps = load_all(&cfg.plant)?;
    let specs = load_all(&cfg.safety_specs)?;
    let legal = load(&cfg.legal)?;
    let minimal = load(&cfg.minimal)?;
    let (g, e) = compose(&comps, &specs)?;
    let al = g.alphabet().clone();
    run_stages(g, e, &legal, &minimal).map_err(|err| match err {
        VerifyError::NoSupervisor(w) => CliError::NoSupervisor(w.display(&al).to_string()),
        other => other.into(),
    })
}

pub fn sup_omega_file(omega: &OmegaSupervisor) -> Automaton {
    omega.with_acceptance().rename("SUP^w")
}

/// ψ as CSV: one row per SUP^ω state, in state order.
pub fn write_psi(path: &Path, omega: &OmegaSupervisor) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["product_state", "z_state", "enabled_events"])?;
    let al = omega.automaton.alphabet();
    for (&(q, z), psi) in omega.keys.iter().zip(&omega.psi) {
        let events: Vec<&str> = psi.iter().map(|&e| al.label(e)).collect();
        w.write_record([q.to_string(), z.to_string(), events.join(" ")])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io { path: path.display().to_string(), source: e.into_error() })?;
    crate::io::write_text(path, &String::from_utf8_lossy(&bytes))
}

/// `controllers/<stem>.aut` for every controller, plus `manifest.json`.
pub fn write_localization(dir: &Path, loc: &Localization, dot_dir: Option<&Path>) -> Result<()> {
    for l in &loc.controllers {
        save(&dir.join(format!("{}.aut", l.file_stem())), &l.automaton)?;
        save_dot(dot_dir, &l.file_stem(), &l.automaton)?;
    }
    write_json(&dir.join("manifest.json"), &manifest(&loc.controllers))
}

fn write_artifacts(x: &Artifacts, opts: &RunOptions) -> Result<()> {
    let out = &opts.out_dir;
    let dot = opts.dot_dir.as_deref();
    let files: [(&str, Automaton); 8] = [
        ("plant", x.plant.clone()),
        ("spec", x.spec.clone()),
        ("sup_star", x.controlled.clone().rename("SUP*")),
        ("rabin_buchi", x.a.clone()),
        ("asup", reachable_trim(&x.asup)),
        ("inf_a", x.inf.clone()),
        ("tracker", x.omega.tracker.clone()),
        ("sup_omega", sup_omega_file(&x.omega)),
    ];
    for (stem, a) in &files {
        save(&out.join(format!("{stem}.aut")), a)?;
        save_dot(dot, stem, a)?;
    }
    write_psi(&out.join("psi.csv"), &x.omega)?;
    write_localization(&out.join("controllers"), &x.loc, dot)
}

/// Equivalence of the controllers with the supervisors, and the controller
/// property of each one.
pub fn verify(x: &Artifacts, lassos: usize, seed: u64) -> Result<VerificationSection> {
    let ctrls = &x.loc.controllers;
    let fin = check_finite_equivalence(&x.plant, &x.sup.automaton, &x.omega.automaton, ctrls)?;
    let equivalence =
        check_infinite_equivalence(&x.plant, &x.sup.automaton, &x.omega.automaton, ctrls, &fin, lassos, seed)?;
    let al = x.plant.alphabet();
    let property_failures: BTreeMap<String, String> = check_controller_properties(
        &x.plant,
        &x.sup.automaton,
        &x.controlled,
        &x.omega.automaton,
        &x.omega.tracker,
        x.omega.sink,
        ctrls,
    )?
    .into_iter()
    .map(|(stem, w)| (stem, al.labels(&w).join(" ")))
    .collect();
    let passed = equivalence.finite_ok && equivalence.infinite_ok && property_failures.is_empty();
    Ok(VerificationSection { equivalence, property_failures, passed })
}

pub fn report(x: &Artifacts, verification: VerificationSection) -> Result<PipelineReport> {
    let sets = |m: BTreeMap<String, std::collections::BTreeSet<StateId>>| -> BTreeMap<String, Vec<StateId>> {
        m.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect()
    };
    let mut drops: BTreeMap<_, std::collections::BTreeSet<StateId>> = BTreeMap::new();
    for (q, evs) in x.c.drops(&x.a) {
        for e in evs {
            drops.entry(e).or_default().insert(q);
        }
    }
    let disabled = disablements(&x.omega.automaton, &x.controlled)?;
    let sizes = |v: &[LocalController]| v.iter().map(|l| (l.file_stem(), l.num_states())).collect();
    Ok(PipelineReport {
        plant: Counts::of(&x.plant),
        spec: Counts::of(&x.spec),
        sup_star: Counts::of(&x.controlled),
        rabin_buchi: Counts::of(&x.a),
        uncontrollable_exits: x.exits.iter().copied().collect(),
        controllability_subset: x.c.subset.len(),
        phi_drops: sets(by_label(&x.a, &drops)),
        sup_omega: Counts::of(&sup_omega_file(&x.omega)),
        sup_omega_disablements: sets(by_label(&x.a, &disabled)),
        controllers: sizes(&x.loc.controllers),
        undivided: sizes(&x.loc.undivided),
        verification,
    })
}

/// The whole pipeline: synthesize, write every artifact under
/// `opts.out_dir`, verify, and write `report.json`.
pub fn run_pipeline(cfg: &PipelineConfig, opts: &RunOptions) -> Result<(Artifacts, PipelineReport)> {
    let x = synthesize(cfg)?;
    write_artifacts(&x, opts)?;
    let v = verify(&x, opts.lassos, opts.seed)?;
    let r = report(&x, v)?;
    write_json(&opts.out_dir.join("report.json"), &r)?;
    Ok((x, r))
}
