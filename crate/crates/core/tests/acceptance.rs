//! Acceptance suite. Runs as a plain binary (no libtest harness) so that the
//! PASS/FAIL lines are always printed; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use holcoh::char_classes::euler_class_hol1;
use holcoh::cli;
use holcoh::exact_linalg::{smith_normal_form, AbelianGroup, IntMatrix};
use holcoh::graded_poly::{Generators, GradedPolynomial};
use holcoh::gysin::{hol1_dimension, hol1_table, rat1_table, verify_duality, CohomologyTable};
use holcoh::quotient_ring::{PoincarePolynomial, PresentedGradedRing};
use holcoh::spaces::{
    grassmannian, grassmannian_reduced_presentation, partial_flag_ring, FlagSpec, Hol1Base,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn group(rank: usize, torsion: &[u32]) -> AbelianGroup {
    AbelianGroup::new(rank, torsion.iter().map(|&t| BigInt::from(t)).collect()).unwrap()
}

// ---------------------------------------------------------------------------

fn hol1_g22_table() -> Check {
    let expected: BTreeMap<u32, AbelianGroup> = [
        (0, group(1, &[])),
        (2, group(2, &[])),
        (4, group(2, &[])),
        (6, group(1, &[4])),
        (7, group(1, &[])),
        (8, group(0, &[4])),
        (9, group(2, &[])),
        (11, group(2, &[])),
        (13, group(1, &[])),
    ]
    .into_iter()
    .collect();
    let table = hol1_table(2, 2).map_err(err)?;
    ensure(table.groups() == &expected, || format!("got\n{table}"))?;

    // Same data through the command line, as JSON.
    let out = cli::run(["holcoh", "hol1", "2", "2", "--format", "json"]);
    ensure(out.code == 0, || out.stderr.clone())?;
    let parsed = cli::parse_table_json(&out.stdout).map_err(err)?;
    ensure(parsed.groups() == &expected, || "CLI JSON differs".into())?;
    Ok("H^6 = Z ⊕ Z_4, H^8 = Z_4, reduced groups as listed, all else 0".into())
}

fn hol1_g22_poincare() -> Check {
    let mut coeffs = vec![0u64; 14];
    for (d, c) in [
        (0, 1),
        (2, 2),
        (4, 2),
        (6, 1),
        (7, 1),
        (9, 2),
        (11, 2),
        (13, 1),
    ] {
        coeffs[d] = c;
    }
    let expected = PoincarePolynomial::new(coeffs);
    let got = hol1_table(2, 2).map_err(err)?.poincare_polynomial();
    ensure(got == expected, || format!("got {got}"))?;
    let out = cli::run(["holcoh", "poincare", "hol1", "2", "2"]);
    ensure(
        out.stdout.trim() == "1+2t^2+2t^4+t^6+t^7+2t^9+2t^11+t^13",
        || format!("CLI printed {}", out.stdout.trim()),
    )?;
    Ok(got.to_string())
}

fn hol1_g23_betti() -> Check {
    let listed = [0, 2, 0, 3, 0, 3, 0, 2, 1, 1, 2, 0, 3, 0, 3, 0, 2, 0, 1];
    let table = hol1_table(2, 3).map_err(err)?;
    ensure(table.betti(0) == 1, || format!("b0 = {}", table.betti(0)))?;
    for (i, &b) in (1u32..).zip(listed.iter()) {
        ensure(table.betti(i) == b, || {
            format!("b{i} = {} expected {b}", table.betti(i))
        })?;
    }
    for i in 0..=19 {
        ensure(table.betti(i) == table.betti(19 - i), || {
            format!("b{i} != b{}", 19 - i)
        })?;
    }
    ensure(table.top_degree() == Some(19), || "nonzero above 19".into())?;
    Ok("b1..b19 as listed, b_i = b_{19-i}".into())
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

fn flag_poincare() -> Check {
    // Flags of dimensions 1 ⊂ 2 ⊂ 4: blocks 1, 1, 2.
    let ring = partial_flag_ring(&FlagSpec::new(vec![1, 1, 2]).map_err(err)?).map_err(err)?;
    let p = ring.poincare_polynomial().map_err(err)?;
    ensure(p.to_string() == "1+2t^2+3t^4+3t^6+2t^8+t^10", || {
        format!("got {p}")
    })?;
    let multinomial = factorial(4) / (factorial(1) * factorial(1) * factorial(2));
    ensure(p.at_one() == multinomial, || {
        format!("P(1) = {}", p.at_one())
    })?;
    let out = cli::run(["holcoh", "poincare", "flag", "1", "1", "2"]);
    ensure(out.stdout == "1+2t^2+3t^4+3t^6+2t^8+t^10\n", || {
        out.stdout.clone()
    })?;
    Ok(format!("{p}, P(1) = {multinomial}"))
}

fn euler_classes() -> Check {
    let base = Hol1Base::new(2, 2).map_err(err)?;
    let e = euler_class_hol1(&base).map_err(err)?;
    let reduced = base.ring.normal_form(&e).map_err(err)?;
    ensure(base.render(&reduced) == "3x^2 + 2xy + y^2", || {
        format!("reduced to {}", base.render(&reduced))
    })?;
    for m in 1..=6u32 {
        let base = Hol1Base::new(2, m).map_err(err)?;
        let gens = base.ring.generators();
        let x = GradedPolynomial::var(gens, 0);
        let y = GradedPolynomial::var(gens, 1);
        // d/dx Σ_{i+j=m+1} x^i y^j = Σ_{i≥1} i x^{i-1} y^{m+1-i}
        let mut closed = GradedPolynomial::zero(gens);
        for i in 1..=m + 1 {
            let term = (&x.pow(i - 1) * &y.pow(m + 1 - i)).scale(&BigInt::from(i));
            closed = &closed + &term;
        }
        let e = euler_class_hol1(&base).map_err(err)?;
        ensure(base.ring.equal_in_ring(&e, &closed).map_err(err)?, || {
            format!("m = {m}: {} vs {}", base.render(&e), base.render(&closed))
        })?;
    }
    Ok("3x^2 + 2xy + y^2; closed form holds for m = 1..6".into())
}

/// gcd of all k×k minors, for the determinantal-divisor oracle.
fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (k - 1..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            let entries = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| m[(i, j)].clone()))
                .collect();
            g = g.gcd(&IntMatrix::new(k, k, entries).unwrap().determinant());
        }
    }
    g
}

fn smith_forms() -> Check {
    let cases = [
        IntMatrix::from_rows(&[vec![3, -1], vec![2, 2], vec![1, 1]]),
        IntMatrix::from_rows(&[vec![1, 1, -3], vec![-1, -1, -1]]),
    ];
    for m in &cases {
        let snf = smith_normal_form(m);
        let mut expected = IntMatrix::zeros(m.rows(), m.cols());
        expected[(0, 0)] = BigInt::one();
        expected[(1, 1)] = BigInt::from(4);
        ensure(snf.diagonal == expected, || {
            format!("diagonal\n{}", snf.diagonal)
        })?;
        ensure(&(&snf.left * m) * &snf.right == snf.diagonal, || {
            "left·M·right is not the diagonal".into()
        })?;
        for u in [&snf.left, &snf.right] {
            let det = u.determinant();
            ensure(det == BigInt::one() || det == -BigInt::one(), || {
                format!("transform has determinant {det}")
            })?;
        }
        // Determinantal divisors: d1 = 1, d1·d2 = 4.
        ensure(minor_gcd(m, 1) == BigInt::one(), || "d1 != 1".into())?;
        ensure(minor_gcd(m, 2) == BigInt::from(4), || "d1·d2 != 4".into())?;
    }
    Ok("both diag(1, 4), confirmed by determinantal divisors".into())
}

/// Sends every generator of a two-generator ring on `c1, c2` to the
/// corresponding surviving generator of `target`.
fn transfer(p: &GradedPolynomial, target: &Generators, mapping: &[usize]) -> GradedPolynomial {
    p.rename_into(target, mapping).unwrap()
}

/// Whether every degree-`d` ideal generator of `from` vanishes in `to`.
fn ideal_contained(
    from: &PresentedGradedRing,
    to: &PresentedGradedRing,
    mapping: &[usize],
    d: u32,
    rational: bool,
) -> Result<bool, String> {
    for g in from.ideal_generators_in_degree(d) {
        let image = transfer(&g, to.generators(), mapping);
        let zero = if rational {
            to.is_zero_rationally(&image)
        } else {
            to.is_zero(&image)
        }
        .map_err(err)?;
        if !zero {
            return Ok(false);
        }
    }
    Ok(true)
}

struct QuadricComparison {
    summary: String,
    integral_literal_mismatch: Vec<u32>,
    literal_torsion: Vec<(u32, Vec<BigInt>)>,
}

fn quadric_presentations() -> Result<QuadricComparison, String> {
    let baum = grassmannian(2, 2).map_err(err)?;
    let reduced = grassmannian_reduced_presentation(2, 2).map_err(err)?;
    let gens = Generators::from_pairs(&[("c1", 2), ("c2", 4)]).map_err(err)?;
    let c1 = GradedPolynomial::var(&gens, 0);
    let c2 = GradedPolynomial::var(&gens, 1);
    let literal = PresentedGradedRing::new(
        gens.clone(),
        vec![
            &c1.pow(3) - &(&c1 * &c2).scale(&BigInt::from(2)),
            &c1.pow(4) - &c2.pow(2).scale(&BigInt::from(2)),
        ],
        8,
    )
    .map_err(err)?;

    let p_baum = baum.poincare_polynomial().map_err(err)?;
    let p_reduced = reduced.poincare_polynomial().map_err(err)?;
    ensure(p_reduced == p_baum, || {
        format!("reduced Poincaré {p_reduced} vs {p_baum}")
    })?;
    // The literal ring has torsion, so only its rational ranks are compared.
    let p_literal = literal.graded_ranks();
    ensure(p_literal == p_baum, || {
        format!("literal Poincaré {p_literal} vs {p_baum}")
    })?;
    let literal_torsion: Vec<(u32, Vec<BigInt>)> = (0..=8)
        .step_by(2)
        .map(|d| (d, literal.degree_basis(d).torsion_report().to_vec()))
        .filter(|(_, t)| !t.is_empty())
        .collect();

    // Baum's ring on c1_1, c1_2, c2_1, c2_2: the linear relations remove the
    // second block, and the first block's classes play the role of c1, c2.
    let surviving = baum.eliminated_presentation().map_err(err)?;
    let baum_gens = surviving.generators();
    let to_baum = [
        baum_gens.index_of("c1_1").map_err(err)?,
        baum_gens.index_of("c1_2").map_err(err)?,
    ];
    let from_baum = {
        let mut m = vec![0; baum_gens.len()];
        m[to_baum[1]] = 1;
        m
    };
    ensure(baum_gens.len() == 2, || {
        "unexpected surviving generators".into()
    })?;

    let mut mismatch = Vec::new();
    for d in (0..=8).step_by(2) {
        for (other, label) in [(&reduced, "reduced"), (&literal, "literal")] {
            let rational = label == "literal";
            let there = ideal_contained(&surviving, other, &from_baum, d, rational)?;
            let back = ideal_contained(other, &surviving, &to_baum, d, rational)?;
            ensure(there && back, || {
                format!("degree {d}: ideals differ from the {label} presentation")
            })?;
        }
        let integral = ideal_contained(&surviving, &literal, &from_baum, d, false)?
            && ideal_contained(&literal, &surviving, &to_baum, d, false)?;
        if !integral {
            mismatch.push(d);
        }
    }
    Ok(QuadricComparison {
        summary: format!(
            "Poincaré {p_baum} for all three; ideals equal over Z (recursive form) and over Q (literal relations)"
        ),
        integral_literal_mismatch: mismatch,
        literal_torsion,
    })
}

fn gaussian_binomial(n: u32, m: u32) -> Vec<u64> {
    // [n+m choose n]_q by the q-Pascal rule, coefficients of q^k.
    let mut table: Vec<Vec<Vec<u64>>> = vec![vec![vec![]; (m + 1) as usize]; (n + 1) as usize];
    for a in 0..=n as usize {
        for b in 0..=m as usize {
            table[a][b] = if a == 0 || b == 0 {
                vec![1]
            } else {
                // [a+b, a] = [a+b-1, a-1] + q^a [a+b-1, a]
                let left = &table[a - 1][b];
                let right = &table[a][b - 1];
                let mut out = vec![0; (a * b + 1).max(left.len()).max(right.len() + a)];
                for (k, c) in left.iter().enumerate() {
                    out[k] += c;
                }
                for (k, c) in right.iter().enumerate() {
                    out[k + a] += c;
                }
                out
            };
        }
    }
    table[n as usize][m as usize].clone()
}

/// Spread `q^k` to `t^{2k}`.
fn in_t(q: &[u64]) -> PoincarePolynomial {
    let mut c = vec![0; 2 * q.len()];
    for (k, &v) in q.iter().enumerate() {
        c[2 * k] = v;
    }
    PoincarePolynomial::new(c)
}

fn property_suite() -> Check {
    let mut grass = 0;
    for n in 1..=7u32 {
        for m in n..=8 - n {
            let expected = in_t(&gaussian_binomial(n, m));
            for ring in [
                grassmannian(n, m).map_err(err)?,
                grassmannian_reduced_presentation(n, m).map_err(err)?,
            ] {
                let p = ring.poincare_polynomial().map_err(err)?;
                ensure(p == expected, || format!("Gr({n},{m}): {p} vs {expected}"))?;
                for d in (0..=ring.truncation_degree()).step_by(2) {
                    ensure(ring.degree_basis(d).is_free(), || {
                        format!("Gr({n},{m}) has torsion in degree {d}")
                    })?;
                }
            }
            if n >= 2 {
                let base = Hol1Base::new(n, m).map_err(err)?;
                for d in (0..=base.ring.truncation_degree()).step_by(2) {
                    ensure(base.ring.degree_basis(d).is_free(), || {
                        format!("{} has torsion in degree {d}", base.spec)
                    })?;
                }
            }
            grass += 1;
        }
    }
    let mut tables = 0;
    for n in 1..=3u32 {
        for m in n..=5 {
            let table = hol1_table(n, m).map_err(err)?;
            let d = 2 * n * (m + 1) + 2 * m - 3;
            ensure(
                table.dimension == Some(d) && hol1_dimension(n, m) == d,
                || format!("hol1({n},{m}) dimension {:?}", table.dimension),
            )?;
            let report = verify_duality(&table).map_err(err)?;
            ensure(report.passed(), || format!("hol1({n},{m}):\n{report}"))?;
            ensure(table.euler_characteristic() == 0, || "χ != 0".into())?;
            tables += 1;
        }
    }
    Ok(format!(
        "{grass} Grassmannians match the Gaussian binomial in both presentations, flags torsion-free, {tables} Hol1 tables satisfy duality"
    ))
}

fn flag_top_degrees() -> Check {
    let mut seen = Vec::new();
    for n in 2..=4u32 {
        for m in n..=4 {
            let spec = FlagSpec::new(vec![n - 1, 2, m - 1]).map_err(err)?;
            let ring = partial_flag_ring(&spec).map_err(err)?;
            let expected = 2 * (n * m + n + m - 3);
            ensure(ring.top_degree() == Some(expected), || {
                format!("{spec}: top {:?}, expected {expected}", ring.top_degree())
            })?;
            seen.push(format!("{spec}:{expected}"));
        }
    }
    Ok(seen.join(" "))
}

fn expect_betti(table: &CohomologyTable, nonzero: &[u32]) -> Result<(), String> {
    let top = table
        .top_degree()
        .unwrap_or(0)
        .max(*nonzero.iter().max().unwrap());
    for d in 0..=top {
        let want = usize::from(nonzero.contains(&d));
        ensure(table.betti(d) == want, || {
            format!("{}: b{d} = {} expected {want}", table.space, table.betti(d))
        })?;
    }
    Ok(())
}

/// Unit tangent bundle of P^m: the S^{2m-1}-bundle with Euler class (m+1)x^m.
/// Z in degrees 0, 2, …, 2m-2; Z_{m+1} in degree 2m; Z in 2m+1, …, 4m-1 odd.
fn unit_tangent_oracle(m: u32) -> BTreeMap<u32, AbelianGroup> {
    let mut g = BTreeMap::new();
    for i in 0..m {
        g.insert(2 * i, group(1, &[]));
    }
    g.insert(2 * m, group(0, &[m + 1]));
    for j in m..2 * m {
        g.insert(2 * j + 1, group(1, &[]));
    }
    g
}

fn rat1_and_unit_tangent() -> Check {
    for m in 2..=5u32 {
        let t = rat1_table(2, m).map_err(err)?;
        expect_betti(&t, &[0, 2, 2 * m - 1, 2 * m + 1])?;
    }
    for m in 1..=5u32 {
        let t = rat1_table(1, m).map_err(err)?;
        expect_betti(&t, &[0, 2 * m - 1])?;
    }
    for m in 1..=4u32 {
        let t = hol1_table(1, m).map_err(err)?;
        let oracle = unit_tangent_oracle(m);
        ensure(t.groups() == &oracle, || format!("hol1(1,{m}):\n{t}"))?;
    }
    Ok("Rat1(2,m) ~ S^2×S^{2m-1}, Rat1(1,m) ~ S^{2m-1}, Hol1(1,m) = ST(P^m) integrally".into())
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: &str, title: &str, outcome: Check| match outcome {
        Ok(detail) => println!("PASS criterion {id}: {title} ({detail})"),
        Err(why) => {
            failed += 1;
            println!(
                "FAIL criterion {id}: {title}\n    {}",
                why.replace('\n', "\n    ")
            );
        }
    };

    report(
        "1",
        "integral cohomology of Hol1(Gr(2,2))",
        hol1_g22_table(),
    );
    report(
        "2",
        "rational Poincaré series of Hol1(Gr(2,2))",
        hol1_g22_poincare(),
    );
    report(
        "3",
        "Betti numbers of Hol1(Gr(2,3)) and their symmetry",
        hol1_g23_betti(),
    );
    report(
        "4",
        "Poincaré polynomial of the flag 1 ⊂ 2 ⊂ C^4",
        flag_poincare(),
    );
    report("5", "Euler class over Gr(2,m)", euler_classes());
    report(
        "6",
        "Smith normal forms of the two Gysin matrices",
        smith_forms(),
    );

    let quadric = quadric_presentations();
    let note = quadric.as_ref().ok().map(|q| {
        (
            q.integral_literal_mismatch.clone(),
            q.literal_torsion.clone(),
        )
    });
    report(
        "7",
        "two presentations of H*(Gr(2,2))",
        quadric.map(|q| q.summary),
    );
    if let Some((degrees, torsion)) = note {
        // Informational: the literal degree-8 relation c1^4 - 2c2^2 spans an
        // index-2 sublattice of the true one, c2^2 - c1^2·c2.
        println!(
            "INFO criterion 7: over Z the literal relations differ from the ideal in degrees {degrees:?}; literal quotient torsion {torsion:?}"
        );
    }

    report("8", "property suite for n + m <= 8", property_suite());
    report(
        "9",
        "top degree of Fl(n-1, n+1; C^{n+m})",
        flag_top_degrees(),
    );
    report(
        "10",
        "Rat1 and Hol1(P^m) against classical spaces",
        rat1_and_unit_tangent(),
    );

    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
