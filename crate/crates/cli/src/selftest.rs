use clap::Parser;
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use thomschur::alphabet::{b_alphabet, Alphabet, Letter, VirtualAlphabet};
use thomschur::expansion::SchurExpansion;
use thomschur::poly::{MPoly, Var};
use thomschur::schur::{
    f_function, factorization_partition, resultant, schur_factorized, HookSpec, Partition,
    SchurEvaluator,
};
use thomschur::thom::*;

use crate::{Cli, Format, Outcome};

/// Golden outputs and the invocations that must reproduce them byte for byte.
pub const GOLDEN: &[(&str, &str, &str)] = &[
    (
        "i22.json",
        "compute I22 --max-r 6 --format json",
        include_str!("../golden/i22.json"),
    ),
    (
        "i22_two_row.json",
        "compute Po --max-r 6 --format json",
        include_str!("../golden/i22_two_row.json"),
    ),
    (
        "h.json",
        "compute H --max-r 7 --format json",
        include_str!("../golden/h.json"),
    ),
    (
        "h_two_row.json",
        "compute Ho --max-r 7 --format json",
        include_str!("../golden/h_two_row.json"),
    ),
    (
        "d_table.json",
        "table d --rows 7 --format json",
        include_str!("../golden/d_table.json"),
    ),
    (
        "e_table.json",
        "table e --rows 8 --format json",
        include_str!("../golden/e_table.json"),
    ),
    (
        "a3_r2.json",
        "compute A3 --r 2 --format json",
        include_str!("../golden/a3_r2.json"),
    ),
    (
        "f3_r1.json",
        "compute F --i 3 --r 1 --format json",
        include_str!("../golden/f3_r1.json"),
    ),
    (
        "a4_r1.json",
        "compute A4 --r 1 --format json",
        include_str!("../golden/a4_r1.json"),
    ),
];

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn invoke(cmd: &str) -> Result<String, String> {
    let argv = std::iter::once("thomschur").chain(cmd.split_whitespace());
    let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    match crate::run(cli) {
        Ok(Outcome { output, ok: true }) => Ok(output),
        Ok(Outcome { output, .. }) => Err(output),
        Err(crate::CliError::Usage(m) | crate::CliError::Failed(m)) => Err(m),
    }
}

fn golden_list(file: &str) -> Vec<SchurExpansion> {
    let (_, _, text) = GOLDEN
        .iter()
        .find(|(f, _, _)| *f == file)
        .expect("golden file is listed");
    serde_json::from_str::<Value>(text)
        .ok()
        .and_then(|v| match v {
            Value::Array(items) => items
                .into_iter()
                .map(|x| serde_json::from_value(x).ok())
                .collect(),
            single => serde_json::from_value(single).ok().map(|e| vec![e]),
        })
        .unwrap_or_default()
}

fn golden_table(file: &str) -> Vec<Vec<String>> {
    let (_, _, text) = GOLDEN
        .iter()
        .find(|(f, _, _)| *f == file)
        .expect("golden file is listed");
    serde_json::from_str::<Value>(text)
        .ok()
        .and_then(|v| serde_json::from_value(v["rows"].clone()).ok())
        .unwrap_or_default()
}

fn same(what: &str, got: &SchurExpansion, want: &SchurExpansion) -> Check {
    ensure(got == want, || format!("{what}: {got} differs from {want}"))
}

fn tables() -> Check {
    let d = golden_table("d_table.json");
    let first: Vec<&str> = d.iter().map(|r| r[0].as_str()).collect();
    ensure(first == ["1", "3", "7", "15", "31", "63", "127"], || {
        format!("d column {first:?}")
    })?;
    ensure(
        d.last().map(|r| r[..4].join(" ")).as_deref() == Some("127 119 91 35"),
        || "d row 7".into(),
    )
}

fn e_rows() -> Check {
    let e = golden_table("e_table.json");
    let first: Vec<&str> = e.iter().map(|r| r[0].as_str()).collect();
    ensure(
        first == ["5", "24", "89", "300", "965", "3024", "9329"],
        || format!("e column {first:?}"),
    )?;
    ensure(
        e.last().map(|r| r[..4].join(" ")).as_deref() == Some("9329 4402 1904 526"),
        || "e row 8".into(),
    )
}

fn i22_list(max_r: u32) -> Check {
    for (k, want) in golden_list("i22.json").iter().enumerate() {
        let r = k as u32 + 1;
        same(&format!("P_{r}"), &thom_i22(r), want)?;
    }
    for r in 2..=max_r.max(2) {
        let raised = thom_i22(r - 1).tau_shift().map_err(|e| e.to_string())?;
        same(
            &format!("P_{r} recursion"),
            &thom_i22(r),
            &(&p_r_o(r) + &raised),
        )?;
    }
    Ok(())
}

fn h_list() -> Check {
    for (k, want) in golden_list("h.json").iter().enumerate() {
        let r = k as u32 + 2;
        same(&format!("H_{r}"), &h_r(r), want)?;
        let raised = h_r(r - 1).tau_shift().map_err(|e| e.to_string())?;
        same(&format!("H_{r} recursion"), &h_r(r), &(&h_r_o(r) + &raised))?;
    }
    Ok(())
}

fn a3_and_f3() -> Check {
    same(
        "A3 r=2",
        &thom_a(3, 2).map_err(|e| e.to_string())?,
        &golden_list("a3_r2.json")[0],
    )?;
    same("F3_1", &f_i_r(3, 1), &golden_list("f3_r1.json")[0])
}

fn a4() -> Check {
    let (defect, _) = a4_defect(&f_i_r(4, 1));
    let (x1, x2) = (MPoly::var(Var::xi(1)), MPoly::var(Var::xi(2)));
    let two = BigInt::from(2);
    let want = (&(&(&x1 * &x2) * &(&x1 - &x2.scale(&two))) * &(&x2 - &x1.scale(&two)))
        .scale(&BigInt::from(-10));
    ensure(defect == want, || format!("defect {defect}"))?;
    same(
        "A4 r=1",
        &thom_a(4, 1).map_err(|e| e.to_string())?,
        &golden_list("a4_r1.json")[0],
    )
}

fn solver() -> Check {
    let mut targets: Vec<SingularityId> = (1..=4).map(SingularityId::i22).collect();
    for i in 1..=3 {
        targets.extend((1..=3).map(|r| SingularityId::a(i, r)));
    }
    targets.push(SingularityId::a(4, 1));
    targets.extend((2..=3).map(SingularityId::iii22));
    for id in targets {
        let sys = RestrictionSystem::new(id, CandidateMode::Default).map_err(|e| e.to_string())?;
        let got = solve_restriction_system(&sys).map_err(|e| format!("{id} r={}: {e}", id.r))?;
        same(
            &format!("{id} r={}", id.r),
            &got,
            &id.thom_polynomial().map_err(|e| e.to_string())?,
        )?;
    }
    Ok(())
}

fn a3_equations() -> Check {
    for r in 2..=4 {
        let rep = verify(
            &thom_a(3, r).map_err(|e| e.to_string())?,
            SingularityId::a(3, r),
        )
        .map_err(|e| e.to_string())?;
        ensure(rep.passed(), || rep.to_text())?;
    }
    Ok(())
}

fn letters(family: char, n: usize, shift: i64) -> Alphabet {
    Alphabet::from_letters((0..n).map(|k| {
        Letter::linear(
            shift - k as i64,
            [(Var::new(family, k as u32 + 1), 1 + (k % 2) as i64)],
        )
    }))
}

fn structure() -> Check {
    let mut instances = 0;
    for m in 0..=2 {
        for n in 0..=2 {
            let (a, b) = (letters('a', m, 1), letters('b', n, -1));
            let c = letters('y', 2, 2);
            let mut plain = SchurEvaluator::new(&VirtualAlphabet::new(a.clone(), b.clone()));
            let mut padded = SchurEvaluator::new(&VirtualAlphabet::new(a.sum(&c), b.sum(&c)));
            let mut swapped = SchurEvaluator::new(&VirtualAlphabet::new(b.clone(), a.clone()));
            for w in 0..=6 {
                for p in Partition::of_weight(w, w as usize) {
                    instances += 1;
                    let v = plain.schur(&p);
                    ensure(padded.schur(&p) == v, || format!("cancellation S_{p}"))?;
                    let d = swapped.schur(&p.conjugate());
                    ensure((if w % 2 == 0 { d } else { -d }) == v, || {
                        format!("duality S_{p}")
                    })?;
                    if !p.in_hook(HookSpec::new(m, n as u32)) {
                        ensure(v.is_zero(), || format!("vanishing S_{p} at A{m} - B{n}"))?;
                    }
                }
            }
            ensure(
                resultant(&a, &b) == plain.schur(&Partition::rectangle(m, n as u32)),
                || format!("resultant R(A{m}, B{n})"),
            )?;
            for i in Partition::within_rectangle(m, 2) {
                for j in Partition::within_rectangle(2, n as u32) {
                    let full =
                        factorization_partition(&j, &i, m, n as u32).map_err(|e| e.to_string())?;
                    let split = schur_factorized(&j, &i, &a, &b).map_err(|e| e.to_string())?;
                    ensure(split == plain.schur(&full), || {
                        format!("factorization S_{full}")
                    })?;
                }
            }
            let boxes = Alphabet::from_letters((0..m).map(|k| Letter::constant(k as i64 + 2)));
            let x = Alphabet::var(Var::x());
            let bn = b_alphabet(n);
            let lhs = f_function(
                &boxes,
                n as u32,
                &VirtualAlphabet::new(x.clone(), bn.clone()),
            );
            let rhs = resultant(&x.sum(&boxes.scale(&Letter::var(Var::x())).unwrap()), &bn);
            ensure(lhs == rhs, || format!("F-function with {m} boxes and B{n}"))?;
        }
    }
    ensure(instances >= 50, || format!("only {instances} instances"))
}

fn first_approximation() -> Check {
    for i in 1..=4u32 {
        for r in 1..=4u32 {
            let f = f_i_r(i, r);
            for p in 2..=i64::from(i) {
                let v = VirtualAlphabet::new(
                    Alphabet::var(Var::x()),
                    Alphabet::single(Letter::scaled(p, Var::x())).sum(&b_alphabet(r as usize - 1)),
                );
                ensure(f.evaluate(&v).is_zero(), || format!("F{i}_{r} at {v}"))?;
            }
            let b = b_alphabet(r as usize);
            let source =
                Alphabet::from_letters((1..=i64::from(i)).map(|p| Letter::scaled(p, Var::x())));
            let at = VirtualAlphabet::new(Alphabet::var(Var::x()), b.clone());
            ensure(f.evaluate(&at) == resultant(&source, &b), || {
                format!("F{i}_{r} at {at}")
            })?;
        }
    }
    Ok(())
}

fn appendix(max_r: u32) -> Check {
    for r in 2..=max_r.max(2) {
        let a = appendix_uv(r).map_err(|e| e.to_string())?;
        ensure(a.u_at_0 == uv_closed_form(r) && a.report.passed(), || {
            a.report.to_text()
        })?;
    }
    Ok(())
}

fn positivity(max_r: u32) -> Check {
    let mut all: Vec<SchurExpansion> = (1..=max_r).map(thom_i22).collect();
    all.extend((2..=max_r + 1).map(h_r));
    for r in 1..=max_r {
        for i in 1..=3 {
            all.push(thom_a(i, r).map_err(|e| e.to_string())?);
        }
    }
    all.push(thom_a(4, 1).map_err(|e| e.to_string())?);
    for e in &all {
        ensure(e.terms().all(|(_, c)| !c.is_negative()), || {
            format!("negative coefficient in {e}")
        })?;
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (perm, even) in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            let moved = perm.len() - pos;
            out.push((p, even == (moved % 2 == 0)));
        }
    }
    out
}

fn oracle() -> Check {
    for m in 0..=3 {
        for n in 0..=3 {
            let a: Vec<MPoly> = (1..=m as u32).map(|k| MPoly::var(Var::a(k))).collect();
            let b: Vec<MPoly> = (1..=n as u32).map(|k| MPoly::var(Var::b(k))).collect();
            let mut series = vec![MPoly::one()];
            series.resize(6, MPoly::zero());
            for x in &a {
                for k in 1..6 {
                    let t = &series[k - 1] * x;
                    series[k] = &series[k] + &t;
                }
            }
            for y in &b {
                for k in (1..6).rev() {
                    let t = &series[k - 1] * y;
                    series[k] = &series[k] - &t;
                }
            }
            let v = VirtualAlphabet::new(Alphabet::variables('a', m), b_alphabet(n));
            let mut ev = SchurEvaluator::new(&v);
            for w in 0..=5 {
                for p in Partition::of_weight(w, w as usize) {
                    let inc = p.increasing();
                    let l = inc.len();
                    let entry = |row: usize, col: usize| {
                        let k = inc[row] as i64 + row as i64 - col as i64;
                        if k < 0 {
                            MPoly::zero()
                        } else {
                            series[k as usize].clone()
                        }
                    };
                    let mut det = MPoly::zero();
                    for (perm, even) in permutations(l) {
                        let term =
                            (0..l).fold(MPoly::one(), |acc, row| &acc * &entry(row, perm[row]));
                        det = if even { &det + &term } else { &det - &term };
                    }
                    ensure(det == ev.schur(&p), || format!("S_{p} at A{m} - B{n}"))?;
                }
            }
        }
    }
    Ok(())
}

pub fn run(max_r: u32, format: Format) -> Outcome {
    let mut golden = Vec::new();
    for (file, cmd, text) in GOLDEN {
        let status = match invoke(cmd) {
            Ok(out) if out == *text => Ok(()),
            Ok(_) => Err(format!("`{cmd}` output differs")),
            Err(e) => Err(format!("`{cmd}` failed: {}", e.trim())),
        };
        golden.push((*file, status));
    }
    let criteria: Vec<(&str, Check)> = vec![
        ("d table", tables()),
        ("e table", e_rows()),
        ("I22 expansions", i22_list(max_r)),
        ("correction terms H", h_list()),
        ("A3 for r=2 and F3_1", a3_and_f3()),
        ("A4 for r=1", a4()),
        ("solver agreement", solver()),
        ("A3 restriction equations", a3_equations()),
        ("structural identities", structure()),
        ("first approximations", first_approximation()),
        ("U/V identities", appendix(max_r)),
        ("nonnegative coefficients", positivity(max_r)),
        ("determinant oracle", oracle()),
    ];
    let passed = golden.iter().all(|(_, s)| s.is_ok()) && criteria.iter().all(|(_, s)| s.is_ok());
    let status = |s: &Check| if s.is_ok() { "PASS" } else { "FAIL" };
    let output = match format {
        Format::Json => {
            let g: Vec<Value> = golden
                .iter()
                .map(|(f, s)| json!({ "file": f, "status": status(s), "detail": s.as_ref().err() }))
                .collect();
            let c: Vec<Value> = criteria
                .iter()
                .enumerate()
                .map(|(k, (name, s))| {
                    json!({ "criterion": k + 1, "name": name, "status": status(s), "detail": s.as_ref().err() })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(
                &json!({ "golden": g, "criteria": c, "passed": passed }),
            )
            .expect("JSON value serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            for (f, s) in &golden {
                out += &format!("golden     {f:<18} {}\n", status(s));
                if let Err(e) = s {
                    out += &format!("    {e}\n");
                }
            }
            for (k, (name, s)) in criteria.iter().enumerate() {
                out += &format!("criterion {:>2}  {}  {name}\n", k + 1, status(s));
                if let Err(e) = s {
                    out += &format!("    {e}\n");
                }
            }
            out += if passed {
                "selftest passed\n"
            } else {
                "selftest FAILED\n"
            };
            out
        }
    };
    Outcome { output, ok: passed }
}
