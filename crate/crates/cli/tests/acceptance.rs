//! End-to-end acceptance run: one PASS/FAIL line per criterion, all at exact
//! arithmetic. Runs without the libtest harness so every line is printed even
//! when a criterion fails; the process exits nonzero if any does.

use std::process::ExitCode;

use nsalg::algebra::{AlgebraMode, Generator, Parity};
use nsalg::analysis::annihilator::minimal_annihilator;
use nsalg::analysis::axiom::{axiom_failures, axiom_generators, verify_module_axiom};
use nsalg::analysis::catalogue::{verify_centralizer, verify_psi_table, verify_reconstructions};
use nsalg::analysis::chains::{three_halves, verify_chains_on_module};
use nsalg::analysis::grid::{verify_grid, GridOptions};
use nsalg::analysis::intertwiner::verify_isomorphisms;
use nsalg::analysis::jacobi::verify_jacobi;
use nsalg::analysis::CheckReport;
use nsalg::enveloping::{SmashElement, SmashMode};
use nsalg::gamma::{make_module, GammaModule, ModuleParams, ModuleVector, SignConvention, Window};
use nsalg::Scalar;
use nsverify::{Runner, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

type Outcome = Result<(), String>;

fn failing(reports: &[CheckReport]) -> Outcome {
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(format!("{} failed: {}", r.name, r.witness.as_deref().unwrap_or(""))),
    }
}

fn engine<T>(r: nsalg::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("engine error: {e}"))
}

fn jacobi() -> Outcome {
    let reports = engine(verify_jacobi(4))?;
    if reports.is_empty() {
        return Err("no Jacobi reports".into());
    }
    failing(&reports)
}

fn reconstruction() -> Outcome {
    failing(&engine(verify_reconstructions(8, None))?)?;
    // Replacing L'_{-1} by L_{-1} must break the second identity already at n = 0.
    let mutated = engine(SmashElement::generator(Generator::L(-1), SmashMode::AK))?;
    let reports = engine(verify_reconstructions(8, Some(&mutated)))?;
    let caught = reports.iter().any(|r| r.name == "reconstruction.g" && r.params.get("n").map(String::as_str) == Some("0") && !r.passed());
    if caught {
        Ok(())
    } else {
        Err("mutated L'_{-1} went undetected at n = 0".into())
    }
}

fn centralizer() -> Outcome {
    failing(&engine(verify_centralizer(8))?)
}

fn psi() -> Outcome {
    failing(&engine(verify_psi_table(5))?)
}

fn formal(c: SignConvention) -> Result<GammaModule, String> {
    engine(make_module(ModuleParams::gamma(Scalar::lambda(), Scalar::b(), AlgebraMode::KHat).with_convention(c)))
}

fn module_axiom() -> Outcome {
    let window = engine(Window::new(-8, 8, 0))?;
    failing(&engine(verify_module_axiom(&formal(SignConvention::Corrected)?, 3, &window))?)?;

    let printed = formal(SignConvention::Printed)?;
    let failures = engine(axiom_failures(&printed, 3, &window))?;
    if let Some(f) = failures.iter().find(|f| f.x.parity() != Parity::Odd || f.y.parity() != Parity::Odd) {
        return Err(format!("printed convention fails the non-odd pair ({}, {})", f.x, f.y));
    }
    let gens = axiom_generators(&printed, 3);
    let odd: Vec<Generator> = gens.into_iter().filter(|g| g.parity() == Parity::Odd).collect();
    for x in &odd {
        for y in &odd {
            if !failures.iter().any(|f| f.x == *x && f.y == *y) {
                return Err(format!("printed convention passes the odd pair ({x}, {y})"));
            }
        }
    }
    let (x, y) = (Generator::g_plus_half(0), Generator::g_plus_half(-1));
    for key in printed.interior_keys(&window).into_iter().filter(|k| k.eps == 0) {
        let got = engine(printed.module_axiom_residual(x, y, key))?;
        let c = Scalar::from_int(4) * (Scalar::lambda() + Scalar::from_int(key.k) + Scalar::b());
        let want = ModuleVector::basis(key).scale(&c);
        if got != want {
            return Err(format!("residual of ({x}, {y}) on {key} is {got}, expected {want}"));
        }
    }
    Ok(())
}

fn grid() -> Outcome {
    let reports = engine(verify_grid(&GridOptions::default()))?;
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} {}: {}", r.name, r.params["module"], r.witness.as_deref().unwrap_or("")))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(format!("{} of {} cases disagree: {}", bad.len(), reports.len(), bad.join("; ")))
    }
}

fn isomorphisms() -> Outcome {
    let window = engine(Window::new(-10, 10, 3))?;
    failing(&engine(verify_isomorphisms(&window, 3))?)
}

fn annihilator() -> Outcome {
    let module = engine(GammaModule::gamma(Scalar::frac(1, 3), Scalar::frac(1, 4), AlgebraMode::KHat))?;
    let window = engine(Window::new(-10, 10, 3))?;
    let out = engine(minimal_annihilator(&module, &window, 6))?;
    if out.m != 3 {
        return Err(format!("minimal order {} instead of 3", out.m));
    }
    if out.minimality_witness.is_none() {
        return Err("no nonzero action at order 2".into());
    }
    failing(&out.reports)?;
    failing(&engine(verify_chains_on_module(&module, &window, out.m, &three_halves()))?)
}

fn run_cli(runner: &Runner, argv: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = runner.run(std::iter::once("nsverify").chain(argv.iter().copied()), &mut out, &mut err);
    (code, out)
}

fn cli() -> Outcome {
    let plain = Runner::default();
    let golden = ["verify", "--suite", "jacobi", "--range", "4", "--format", "json"];
    let (c1, first) = run_cli(&plain, &golden);
    let (c2, second) = run_cli(&plain, &golden);
    if (c1, c2) != (EXIT_OK, EXIT_OK) {
        return Err(format!("jacobi suite exited {c1}/{c2}"));
    }
    if first != second {
        return Err("JSON output differs between runs".into());
    }
    let doc: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    let checks = doc["checks"].as_array().ok_or("no checks array")?;
    if checks.iter().any(|c| c["name"].as_str().is_none() || c["paper_anchor"].as_str().is_none() || c["status"] != "pass") {
        return Err("a check lacks name, anchor or pass status".into());
    }

    let injected = Runner::with_injected(vec![CheckReport::fail("injected", "x", "forced")]);
    let cases: [(&Runner, &[&str], i32); 4] = [
        (&injected, &["verify", "--suite", "jacobi", "--range", "2"], EXIT_CHECK_FAILED),
        (&plain, &["module-axiom", "--module", "gamma(l,b)", "--convention", "paper-printed", "--range", "2", "--window=-4..4"], EXIT_CHECK_FAILED),
        (&plain, &["module-simplicity", "--module", "gamma(1/0,1)"], EXIT_USAGE),
        (&plain, &["verify", "--window=5..1"], EXIT_USAGE),
    ];
    for (runner, argv, want) in cases {
        let (got, _) = run_cli(runner, argv);
        if got != want {
            return Err(format!("{argv:?} exited {got}, expected {want}"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Jacobi identity on generators with |index| <= 4", jacobi),
        ("reconstruction of L_n and G_{n-1/2}, n <= 8, with mutation detection", reconstruction),
        ("primed elements centralize A and G_{-1/2}", centralizer),
        ("bracket table of the primed elements", psi),
        ("module axiom: corrected passes, printed fails exactly on odd pairs", module_axiom),
        ("simplicity grid against the classification", grid),
        ("isomorphism and non-isomorphism cases", isomorphisms),
        ("minimal annihilating order 3 with chains", annihilator),
        ("CLI determinism and exit codes", cli),
    ];
    let mut ok = true;
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {label}", i + 1),
            Err(why) => {
                ok = false;
                println!("criterion {}: FAIL  {label}: {why}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
