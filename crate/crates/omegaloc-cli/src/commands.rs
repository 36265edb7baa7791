//! One function per subcommand. Each returns the text to print on success.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use omegaloc_core::ops::sync_product;
use omegaloc_core::{Alphabet, Automaton, Kind};
use omegaloc_local::{localize_all, ControlCongruence, ControllerKind, LocalController, Part};
use omegaloc_synth::{
    assemble_fomega, build_rabin_buchi, compose_plant, controllability_subset_excluding, controlled_plant,
    existence_check, inf_closure, pre_a_tracker, restrict_sup, sup_con_star, uncontrollable_exits, Existence,
};
use omegaloc_verify::{
    check_controller_properties, check_finite_equivalence, check_infinite_equivalence, EquivalenceReport,
};

use crate::config::PipelineConfig;
use crate::error::{CliError, Result};
use crate::io::{load, load_all, save, save_dot, write_json};
use crate::pipeline::{compose, load_plant, run_pipeline, sup_omega_file, write_localization, write_psi, RunOptions};
use crate::summary::{disablements, Summary};

fn stem_of(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into())
}

/// Synchronous product of the given files. Without `star`, Büchi files are
/// treated as fairness assumptions and the result is a Büchi plant.
pub fn product(files: &[PathBuf], out: &Path, star: bool, dot: Option<&Path>) -> Result<String> {
    let comps = load_all(files)?;
    let refs: Vec<&Automaton> = comps.iter().collect();
    let p = if star {
        let al = Alphabet::union(refs.iter().map(|c| c.alphabet()))?;
        let stars: Vec<Automaton> = comps.iter().map(|c| c.with_kind(Kind::Star)).collect();
        sync_product(&stars.iter().collect::<Vec<_>>(), &al)?
    } else {
        compose_plant(&refs)?
    };
    save(out, &p)?;
    save_dot(dot, &stem_of(out), &p)?;
    Ok(format!("product: {}\n", Summary::of(&p).headline()))
}

/// SUP* for the plant and the intersection of the specifications. The
/// output carries SUP*'s transitions and the Büchi states lifted from the
/// plant, i.e. it is the controlled plant G^{f*}.
pub fn synth_safety(plant: &[PathBuf], specs: &[PathBuf], out: &Path, dot: Option<&Path>) -> Result<String> {
    let g = load_plant(plant)?;
    let (_, e) = compose(std::slice::from_ref(&g), &load_all(specs)?)?;
    let sup = sup_con_star(&g, &e)?;
    let gf = controlled_plant(&sup).rename("SUP*");
    save(out, &gf)?;
    save_dot(dot, &stem_of(out), &gf)?;
    if sup.is_empty() {
        return Ok("SUP*: empty supremal language\n".into());
    }
    Ok(format!("SUP*: {}\n", Summary::of(&gf).headline()))
}

/// SUP^ω on top of the controlled plant written by `synth-safety`.
pub fn synth_omega(
    plant: &Path,
    legal: &Path,
    minimal: &Path,
    out: &Path,
    psi_table: Option<&Path>,
    dot: Option<&Path>,
) -> Result<String> {
    let g = load(plant)?.with_kind(Kind::Buchi);
    let legal = load(legal)?;
    let minimal = load(minimal)?;
    let a = build_rabin_buchi(&g, &legal)?;
    let exits = uncontrollable_exits(&a, &g)?;
    let c = controllability_subset_excluding(&a, &exits)?;
    let asup = restrict_sup(&a, &c);
    let inf = inf_closure(&minimal, &g)?;
    let proof = match existence_check(&inf, &asup)? {
        Existence::Holds(p) => p,
        Existence::Fails(w) => return Err(CliError::NoSupervisor(w.display(g.alphabet()).to_string())),
    };
    let omega = assemble_fomega(&asup, &c, &minimal, &proof)?;
    let sup = sup_omega_file(&omega);
    save(out, &sup)?;
    save_dot(dot, &stem_of(out), &sup)?;
    if let Some(p) = psi_table {
        write_psi(p, &omega)?;
    }
    let mut s = String::new();
    let _ = writeln!(s, "A: {}", Summary::of(&a).headline());
    let _ = writeln!(s, "C^A: {} of {} states", c.subset.len(), a.num_states());
    let _ = writeln!(s, "SUP^w: {}", Summary::of(&sup).headline());
    for (e, xs) in disablements(&omega.automaton, &g)? {
        let _ = writeln!(s, "  {} disabled at {} states", g.alphabet().label(e), xs.len());
    }
    Ok(s)
}

/// Local controllers for every controllable event, written to `out_dir`
/// with a manifest.
pub fn localize(
    plant: &[PathBuf],
    sup_star: &Path,
    sup_omega: &Path,
    minimal: &Path,
    out_dir: &Path,
    dot: Option<&Path>,
) -> Result<String> {
    let g = load_plant(plant)?;
    let gf = load(sup_star)?.with_kind(Kind::Buchi);
    let sup = load(sup_omega)?.with_kind(Kind::Star);
    let (tracker, sink) = pre_a_tracker(&load(minimal)?);
    let loc = localize_all(&g, &gf.with_kind(Kind::Star), &gf, &sup, &tracker, sink)?;
    write_localization(out_dir, &loc, dot)?;
    let mut s = String::new();
    for l in &loc.controllers {
        let _ = writeln!(s, "{}: {} states", l.file_stem(), l.num_states());
    }
    Ok(s)
}

/// Event, kind and part from a controller file stem.
pub fn parse_controller_stem(stem: &str) -> Option<(&str, ControllerKind, Part)> {
    let rest = stem.strip_prefix("loc_")?;
    for (suffix, kind, part) in [
        ("_safety", ControllerKind::Safety, Part::None),
        ("_live_c1", ControllerKind::Liveness, Part::C1),
        ("_live_c2", ControllerKind::Liveness, Part::C2),
        ("_live", ControllerKind::Liveness, Part::None),
    ] {
        if let Some(ev) = rest.strip_suffix(suffix) {
            return (!ev.is_empty()).then_some((ev, kind, part));
        }
    }
    None
}

/// Every `loc_*.aut` in `dir`, in file-name order.
pub fn load_controllers(dir: &Path) -> Result<Vec<LocalController>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), source: e })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "aut"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let stem = stem_of(&p);
        let Some((label, kind, part)) = parse_controller_stem(&stem) else {
            log::warn!("skipping {}: not a controller file name", p.display());
            continue;
        };
        let automaton = load(&p)?.with_kind(Kind::Star);
        let event = automaton.alphabet().index_or_err(label)?;
        let n = automaton.num_states();
        out.push(LocalController { automaton, event, kind, part, congruence: ControlCongruence::identity(n) });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct VerifyArgs<'a> {
    pub plant: &'a [PathBuf],
    pub sup_star: &'a Path,
    pub sup_omega: &'a Path,
    pub controllers: &'a Path,
    pub minimal: Option<&'a Path>,
    pub report: Option<&'a Path>,
    pub lassos: usize,
    pub seed: u64,
}

/// Equivalence of the controllers in a directory with the supervisors;
/// with `minimal`, also the controller property of each one.
pub fn verify(args: &VerifyArgs) -> Result<(EquivalenceReport, String)> {
    let g = load_plant(args.plant)?;
    let gf = load(args.sup_star)?.with_kind(Kind::Buchi);
    let sup_star = gf.with_kind(Kind::Star);
    let sup = load(args.sup_omega)?.with_kind(Kind::Star);
    let ctrls = load_controllers(args.controllers)?;
    let fin = check_finite_equivalence(&g, &sup_star, &sup, &ctrls)?;
    let report = check_infinite_equivalence(&g, &sup_star, &sup, &ctrls, &fin, args.lassos, args.seed)?;
    if let Some(p) = args.report {
        write_json(p, &report)?;
    }
    let mut s = String::new();
    for (k, v) in &report.sub_results {
        let _ = writeln!(s, "{k}: {}", if *v { "ok" } else { "FAILED" });
    }
    let _ = writeln!(s, "{} lassos checked (seed {})", report.checked_lassos, report.seed);
    if let Some(cx) = &report.counterexample {
        let _ = writeln!(s, "counterexample: {cx}");
    }
    let mut failed = !(report.finite_ok && report.infinite_ok);
    if let Some(m) = args.minimal {
        let (tracker, sink) = pre_a_tracker(&load(m)?);
        let bad = check_controller_properties(&g, &sup_star, &gf, &sup, &tracker, sink, &ctrls)?;
        for (stem, w) in &bad {
            let _ = writeln!(s, "{stem}: property violated after `{}`", g.alphabet().labels(w).join(" "));
        }
        failed |= !bad.is_empty();
    }
    if failed {
        return Err(CliError::Verification(s));
    }
    Ok((report, s))
}

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub dot_dir: Option<PathBuf>,
    pub lassos: Option<usize>,
    pub seed: Option<u64>,
}

pub fn pipeline(config: &Path, o: &Overrides) -> Result<String> {
    let cfg = PipelineConfig::load(config)?;
    let mut opts = RunOptions::from_config(&cfg);
    if let Some(d) = &o.out_dir {
        opts.out_dir = d.clone();
        if cfg.dot {
            opts.dot_dir = Some(d.join("dot"));
        }
    }
    if let Some(d) = &o.dot_dir {
        opts.dot_dir = Some(d.clone());
    }
    opts.lassos = o.lassos.unwrap_or(opts.lassos);
    opts.seed = o.seed.unwrap_or(opts.seed);
    let (_, r) = run_pipeline(&cfg, &opts)?;
    let mut s = String::new();
    let _ = writeln!(s, "SUP*: {} states, {} transitions", r.sup_star.states, r.sup_star.transitions);
    let _ = writeln!(s, "A: {} states, C^A: {} states", r.rabin_buchi.states, r.controllability_subset);
    let _ = writeln!(s, "SUP^w: {} states, {} transitions", r.sup_omega.states, r.sup_omega.transitions);
    let _ = writeln!(s, "{} controllers", r.controllers.len());
    for (k, v) in &r.verification.equivalence.sub_results {
        let _ = writeln!(s, "  {k}: {}", if *v { "ok" } else { "FAILED" });
    }
    let _ = writeln!(s, "artifacts in {}", opts.out_dir.display());
    if !r.passed() {
        return Err(CliError::Verification(s));
    }
    Ok(s)
}

pub fn info(file: &Path) -> Result<String> {
    Ok(Summary::of(&load(file)?).render())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn controller_stems() {
        assert_eq!(parse_controller_stem("loc_a1_safety"), Some(("a1", ControllerKind::Safety, Part::None)));
        assert_eq!(parse_controller_stem("loc_x_y_live_c2"), Some(("x_y", ControllerKind::Liveness, Part::C2)));
        assert_eq!(parse_controller_stem("loc_b_live"), Some(("b", ControllerKind::Liveness, Part::None)));
        assert_eq!(parse_controller_stem("loc__safety"), None);
        assert_eq!(parse_controller_stem("sup_omega"), None);
    }
}
