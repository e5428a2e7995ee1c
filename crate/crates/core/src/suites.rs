//! Named verification suites over a [`Context`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bases::{self, BasisKind, Check};
use crate::clifford::{Eps, SpinorPoly};
use crate::context::Context;
use crate::operator::{apply_spinor, spanning_set, verify_identity, verify_on, IdentityReport, Op};
use crate::poly::{MultiIndex, Polynomial};
use crate::projection;
use crate::scalar::{pochhammer, Scalar};

pub const SUITES: &[&str] =
    &["osp12", "laplace-symmetries", "dirac-symmetries", "kelvin", "projections", "bases", "section5-constants", "all"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Group {
    Sl2,
    Osp,
    DoubleCover,
    MSymmetry,
    KelvinBasic,
    KelvinM,
    KelvinZ,
    ZSymmetry,
    HarmonicProj,
    MonogenicProj,
    MProj,
    Xu,
    ZProj,
    Bases,
    Tower,
}

fn groups(suite: &str) -> Option<Vec<Group>> {
    use Group::*;
    Some(match suite {
        "osp12" => vec![Sl2, Osp, DoubleCover],
        "laplace-symmetries" => vec![MSymmetry, KelvinM, MProj, Xu],
        "dirac-symmetries" | "z-relations" => vec![DoubleCover, ZSymmetry, KelvinZ, KelvinBasic, ZProj],
        "kelvin" => vec![KelvinBasic, KelvinM, KelvinZ],
        "projections" => vec![HarmonicProj, MonogenicProj, MProj, Xu, ZProj],
        "bases" => vec![Bases],
        "section5-constants" => vec![Tower],
        "all" => vec![
            Sl2,
            Osp,
            DoubleCover,
            MSymmetry,
            KelvinBasic,
            KelvinM,
            KelvinZ,
            ZSymmetry,
            HarmonicProj,
            MonogenicProj,
            MProj,
            Xu,
            ZProj,
            Bases,
            Tower,
        ],
        _ => return None,
    })
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "suite {}: {} checks, {} failed",
            self.suite,
            self.checks.len(),
            self.failures()
        )
    }
}

/// Runs a named suite with operator identities checked on inputs of degree `≤ max_degree`.
pub fn run_suite(ctx: &Context, suite: &str, max_degree: usize) -> Option<SuiteReport> {
    let mut checks = Vec::new();
    for g in groups(suite)? {
        let mut r = Runner { ctx, n: max_degree, checks: Vec::new() };
        r.run(g);
        checks.extend(r.checks);
    }
    Some(SuiteReport { suite: suite.to_string(), checks })
}

fn s(c: Scalar) -> Op {
    Op::scalar(c)
}

fn int(c: i64) -> Op {
    Op::int(c)
}

fn kappa_sigma(ctx: &Context) -> Op {
    Op::sum(ctx.group().roots().iter().enumerate().map(|(i, r)| s(r.kappa.clone()) * Op::reflect(i)))
}

/// `Σ_j α_j T_j`
fn dunkl_along(alpha: &[Scalar]) -> Op {
    Op::sum(alpha.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(j, a)| s(a.clone()) * Op::dunkl(j)))
}

fn x_along(alpha: &[Scalar]) -> Op {
    Op::sum(alpha.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(j, a)| s(a.clone()) * Op::x(j)))
}

fn sub1(j: usize) -> usize {
    j + 1
}

struct Runner<'a> {
    ctx: &'a Context,
    n: usize,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn d(&self) -> usize {
        self.ctx.dim()
    }

    fn eps(&self) -> Scalar {
        self.ctx.eps().scalar()
    }

    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn report(&mut self, name: String, r: IdentityReport) {
        self.push(Check::new(name, r.passed(), r.to_string()));
    }

    fn ident(&mut self, name: impl Into<String>, lhs: Op, rhs: Op) {
        let r = verify_identity(self.ctx, &lhs, &rhs, self.n);
        self.report(name.into(), r);
    }

    /// Combines per-index identities into one check, keeping the first failure.
    fn ident_all(&mut self, name: impl Into<String>, pairs: Vec<(String, Op, Op)>) {
        let name = name.into();
        let inputs = spanning_set(self.ctx, self.n);
        let mut total = 0;
        for (tag, lhs, rhs) in pairs {
            let r = verify_on(self.ctx, &lhs, &rhs, &inputs);
            total += r.checked;
            if !r.passed() {
                self.push(Check::new(format!("{name} [{tag}]"), false, r.to_string()));
                return;
            }
        }
        self.push(Check::new(name, true, format!("ok on {total} applications")));
    }

    fn run(&mut self, g: Group) {
        match g {
            Group::Sl2 => self.sl2(),
            Group::Osp => self.osp(),
            Group::DoubleCover => self.double_cover(),
            Group::MSymmetry => self.m_symmetry(),
            Group::KelvinBasic => self.kelvin_basic(),
            Group::KelvinM => self.kelvin_m(),
            Group::KelvinZ => self.kelvin_z(),
            Group::ZSymmetry => self.z_symmetry(),
            Group::HarmonicProj => self.harmonic_proj(),
            Group::MonogenicProj => self.monogenic_proj(),
            Group::MProj => self.m_proj(),
            Group::Xu => self.xu(),
            Group::ZProj => self.z_proj(),
            Group::Bases => self.bases(),
            Group::Tower => self.tower(),
        }
    }

    fn sl2(&mut self) {
        let d = self.d();
        let (h, lap, sq) = (Op::h(d), Op::laplacian(), Op::sqnorm(d));
        self.ident("[H, |x|^2] = 2|x|^2", Op::comm(h.clone(), sq.clone()), int(2) * sq.clone());
        self.ident("[H, Delta] = -2 Delta", Op::comm(h.clone(), lap.clone()), int(-2) * lap.clone());
        self.ident("[Delta, |x|^2] = 4H", Op::comm(lap.clone(), sq.clone()), int(4) * h.clone());
        let half_sum = s(Scalar::from_ratio(1, 2)) * Op::sum((0..d).map(|j| Op::acomm(Op::dunkl(j), Op::x(j))));
        self.ident("H = (1/2) sum_j {T_j, x_j}", half_sum, h.clone());
        self.ident(
            "H = E + d/2 + gamma",
            h.clone(),
            Op::euler(d) + s(self.ctx.half_dim_gamma()),
        );
        let pairs = |f: &dyn Fn(usize) -> (Op, Op)| (0..d).map(|j| (format!("j = {}", sub1(j)), f(j).0, f(j).1)).collect();
        self.ident_all("[H, x_j] = x_j", pairs(&|j| (Op::comm(Op::h(d), Op::x(j)), Op::x(j))));
        self.ident_all("[H, T_j] = -T_j", pairs(&|j| (Op::comm(Op::h(d), Op::dunkl(j)), -Op::dunkl(j))));
        self.ident_all("[Delta, x_j] = 2T_j", pairs(&|j| (Op::comm(Op::laplacian(), Op::x(j)), int(2) * Op::dunkl(j))));
        self.ident_all("[|x|^2, T_j] = -2x_j", pairs(&|j| (Op::comm(Op::sqnorm(d), Op::dunkl(j)), int(-2) * Op::x(j))));
        let mut comm = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                comm.push((format!("{}, {}", sub1(i), sub1(j)), Op::comm(Op::dunkl(i), Op::dunkl(j)), Op::zero()));
            }
        }
        self.ident_all("[T_i, T_j] = 0", comm);
    }

    fn osp(&mut self) {
        let d = self.d();
        let eps = self.eps();
        let (dd, xx) = (Op::dirac(d), Op::vec_x(d));
        self.ident("{D, x} = 2 eps H", Op::acomm(dd.clone(), xx.clone()), s(&eps * &Scalar::from_int(2)) * Op::h(d));
        self.ident("eps D^2 = Delta", s(eps.clone()) * dd.clone().pow(2), Op::laplacian());
        self.ident("eps x^2 = |x|^2", s(eps.clone()) * xx.clone().pow(2), Op::sqnorm(d));
        self.ident("[D, |x|^2] = 2x", Op::comm(dd.clone(), Op::sqnorm(d)), int(2) * xx.clone());
        self.ident("[x, Delta] = -2D", Op::comm(xx.clone(), Op::laplacian()), int(-2) * dd.clone());
        self.ident("[D, H] = D", Op::comm(dd.clone(), Op::h(d)), dd.clone());
        self.ident("[x, H] = -x", Op::comm(xx.clone(), Op::h(d)), -xx.clone());
        for rank in 1..d {
            if self.ctx.partial(rank).is_err() {
                continue;
            }
            self.ident(
                format!("{{D_[{rank}], x_[{rank}]}} = 2 eps H_[{rank}]"),
                Op::acomm(Op::dirac(rank), Op::vec_x(rank)),
                s(&eps * &Scalar::from_int(2)) * Op::h(rank),
            );
        }
    }

    fn double_cover(&mut self) {
        let ctx = self.ctx;
        let d = self.d();
        let roots = ctx.group().roots();
        let mut anti = Vec::new();
        let mut sig = Vec::new();
        for (i, r) in roots.iter().enumerate() {
            let tag = format!("root {}", sub1(i));
            anti.push((tag.clone(), Op::acomm(Op::double_cover(i), Op::dirac(d)), Op::zero()));
            anti.push((tag.clone(), Op::acomm(Op::double_cover(i), Op::vec_x(d)), Op::zero()));
            sig.push((
                tag.clone(),
                Op::comm(Op::dirac(d), Op::reflect(i)),
                int(2) * dunkl_along(&r.vector) * Op::double_cover(i),
            ));
            sig.push((tag, Op::comm(Op::vec_x(d), Op::reflect(i)), int(2) * x_along(&r.vector) * Op::double_cover(i)));
        }
        self.ident_all("{a sigma_a, D} = 0 = {a sigma_a, x}", anti);
        self.ident_all("[D, sigma_a] = 2<T,a> a sigma_a, [x, sigma_a] = 2<x,a> a sigma_a", sig);
        let ddx = |j: usize| {
            Op::e(j)
                + Op::sum(roots.iter().enumerate().filter(|(_, r)| !r.vector[j].is_zero()).map(|(i, r)| {
                    s(Scalar::from_int(2) * &r.kappa * &r.vector[j]) * Op::double_cover(i)
                }))
        };
        let mut pairs = Vec::new();
        for j in 0..d {
            let tag = format!("j = {}", sub1(j));
            pairs.push((tag.clone(), Op::comm(Op::dunkl(j), Op::vec_x(d)), ddx(j)));
            pairs.push((tag, Op::comm(Op::dirac(d), Op::x(j)), ddx(j)));
        }
        self.ident_all("[T_j, x] = [D, x_j] = e_j + 2 sum kappa a_j a sigma_a", pairs);
        let o = Op::sum((0..d).map(|j| Op::o(ctx, j) * Op::e(j)));
        self.ident("sum_j O_j e_j = sum kappa sigma_a", o, kappa_sigma(ctx));
    }

    fn m_symmetry(&mut self) {
        let d = self.d();
        let pairs = (0..d)
            .map(|j| {
                (
                    format!("j = {}", sub1(j)),
                    Op::comm(Op::laplacian(), Op::m(d, j)),
                    int(4) * Op::x(j) * Op::laplacian(),
                )
            })
            .collect();
        self.ident_all("[Delta, m_j] = 4 x_j Delta", pairs);
        let mut comm = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                comm.push((format!("{}, {}", sub1(i), sub1(j)), Op::comm(Op::m(d, i), Op::m(d, j)), Op::zero()));
            }
        }
        self.ident_all("[m_j, m_k] = 0", comm);
    }

    fn kelvin_basic(&mut self) {
        let d = self.d();
        let (k, i) = (Op::kelvin_k(), Op::kelvin_i());
        self.ident("K K = 1", k.clone() * k.clone(), Op::id());
        self.ident("I I = eps", i.clone() * i.clone(), s(self.eps()));
        self.ident("I = x |x|^-2 K", i, Op::vec_x(d) * Op::norm_pow(num_rational::BigRational::from_integer((-2).into())) * k);
    }

    /// Multi-indices with `1 ≤ |β| ≤ top`.
    fn betas(&self, top: usize) -> Vec<MultiIndex> {
        (1..=top).flat_map(|n| MultiIndex::all_of_degree(self.d(), n)).collect()
    }

    fn kelvin_m(&mut self) {
        let d = self.d();
        let k = Op::kelvin_k();
        let pairs = (0..d)
            .map(|j| (format!("j = {}", sub1(j)), Op::m(d, j), -(k.clone() * Op::dunkl(j) * k.clone())))
            .collect();
        self.ident_all("m_j = -K T_j K", pairs);
        let pairs = self
            .betas(self.n.min(3))
            .into_iter()
            .map(|b| {
                let sign = Scalar::sign_pow(b.degree());
                (format!("beta = {b}"), Op::m_pow(d, &b), s(sign) * k.clone() * Op::dunkl_pow(&b) * k.clone())
            })
            .collect();
        self.ident_all("m^beta = (-1)^n K T^beta K", pairs);
    }

    fn kelvin_z(&mut self) {
        let ctx = self.ctx;
        let d = self.d();
        let i = Op::kelvin_i();
        let pairs = (0..d)
            .map(|j| (format!("j = {}", sub1(j)), Op::z(ctx, j), -(i.clone() * Op::dunkl(j) * i.clone())))
            .collect();
        self.ident_all("z_j = -I T_j I", pairs);
        let eps = ctx.eps();
        let pairs = self
            .betas(self.n.min(3))
            .into_iter()
            .map(|b| {
                let n = b.degree();
                let c = Scalar::sign_pow(n) * eps.pow(n - 1);
                (format!("beta = {b}"), Op::z_pow(eps, d, &b), s(c) * i.clone() * Op::dunkl_pow(&b) * i.clone())
            })
            .collect();
        self.ident_all("z^beta = (-1)^n eps^(n-1) I T^beta I", pairs);
    }

    fn z_symmetry(&mut self) {
        let ctx = self.ctx;
        let d = self.d();
        let eps = self.eps();
        let two_eps = Scalar::from_int(2) * &eps;
        let (dd, xx) = (Op::dirac(d), Op::vec_x(d));
        let z = |j: usize| Op::z(ctx, j);
        let per_j = |f: &dyn Fn(usize) -> (Op, Op)| -> Vec<(String, Op, Op)> {
            (0..d).map(|j| (format!("j = {}", sub1(j)), f(j).0, f(j).1)).collect()
        };
        self.ident_all(
            "[D, z_j] = 2 eps x_j D",
            per_j(&|j| (Op::comm(dd.clone(), z(j)), s(two_eps.clone()) * Op::x(j) * dd.clone())),
        );
        let mut comm = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                comm.push((format!("{}, {}", sub1(i), sub1(j)), Op::comm(z(i), z(j)), Op::zero()));
            }
        }
        self.ident_all("[z_j, z_l] = 0", comm);
        let mut forms = per_j(&|j| (z(j), Op::z_via_osp(ctx, j)));
        forms.extend(per_j(&|j| (z(j), Op::z_via_o(ctx, j))));
        self.ident_all("three forms of z_j agree", forms);

        // commutation relations of z_k with x, x_j, e_j, T_j and the double cover
        self.ident_all(
            "[x, z_k] = -2 eps x_k x + x (e_k + 2 eps O_k) x",
            per_j(&|k| {
                (
                    Op::comm(xx.clone(), z(k)),
                    s(-two_eps.clone()) * Op::x(k) * xx.clone()
                        + xx.clone() * (Op::e(k) + s(two_eps.clone()) * Op::o(ctx, k)) * xx.clone(),
                )
            }),
        );
        let mut pairs = Vec::new();
        for j in 0..d {
            for k in 0..d {
                let tag = format!("j = {}, k = {}", sub1(j), sub1(k));
                pairs.push((
                    tag,
                    Op::comm(Op::x(j), z(k)),
                    s(-two_eps.clone()) * Op::x(j) * Op::x(k) - xx.clone() * Op::comm(Op::x(j), Op::dunkl(k)) * xx.clone(),
                ));
            }
        }
        self.ident_all("[x_j, z_k] = -2 eps x_j x_k - x [x_j, T_k] x", pairs);
        let mut pairs = Vec::new();
        for j in 0..d {
            for k in 0..d {
                let tag = format!("j = {}, k = {}", sub1(j), sub1(k));
                pairs.push((
                    tag,
                    Op::comm(Op::e(j), z(k)),
                    s(two_eps.clone())
                        * (xx.clone() * Op::dunkl(k) * Op::x(j) - Op::x(j) * Op::dunkl(k) * xx.clone()),
                ));
            }
        }
        self.ident_all("[e_j, z_k] = 2 eps (x T_k x_j - x_j T_k x)", pairs);
        let mut pairs = Vec::new();
        for j in 0..d {
            for k in 0..d {
                let tag = format!("j = {}, k = {}", sub1(j), sub1(k));
                let rhs = s(two_eps.clone()) * (Op::x(k) * Op::dunkl(j) - Op::x(j) * Op::dunkl(k))
                    + s(two_eps.clone()) * Op::comm(Op::dunkl(j), Op::x(k)) * Op::h(d)
                    + Op::e(j) * Op::comm(xx.clone(), Op::dunkl(k))
                    - s(two_eps.clone())
                        * (Op::o(ctx, j) * Op::dunkl(k) * xx.clone() + xx.clone() * Op::dunkl(k) * Op::o(ctx, j));
                pairs.push((tag, Op::comm(Op::dunkl(j), z(k)), rhs));
            }
        }
        self.ident_all("[T_j, z_k] relation", pairs);
        let mut pairs = Vec::new();
        for (a, _) in ctx.group().roots().iter().enumerate() {
            for k in 0..d {
                let mut unit = vec![Scalar::zero(); d];
                unit[k] = Scalar::one();
                let image = ctx.group().reflect(a, &unit);
                let zk = Op::sum(image.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| s(c.clone()) * z(j)));
                pairs.push((
                    format!("root {}, k = {}", sub1(a), sub1(k)),
                    Op::double_cover(a) * z(k),
                    zk * Op::double_cover(a),
                ));
            }
        }
        self.ident_all("a sigma_a z_k = z_(sigma_a xi_k) a sigma_a", pairs);

        let zz = Op::sum((0..d).map(|j| z(j) * Op::e(j)));
        let rhs = s(two_eps.clone()) * xx.clone() * (Op::euler(d) + s(ctx.gamma().clone()) - kappa_sigma(ctx))
            - s(eps.clone()) * Op::sqnorm(d) * dd.clone();
        self.ident("sum_j z_j e_j = 2 eps x (E + gamma - sum kappa sigma) - eps |x|^2 D", zz, rhs);

        for rank in 2..d {
            if ctx.partial(rank).is_err() {
                continue;
            }
            let mut pairs = Vec::new();
            for j in 0..rank {
                let zj = Op::z_partial(ctx.eps(), rank, j);
                pairs.push((
                    format!("j = {}", sub1(j)),
                    Op::comm(Op::dirac(rank), zj.clone()),
                    s(two_eps.clone()) * Op::x(j) * Op::dirac(rank),
                ));
                for l in j + 1..rank {
                    pairs.push((
                        format!("j = {}, l = {}", sub1(j), sub1(l)),
                        Op::comm(zj.clone(), Op::z_partial(ctx.eps(), rank, l)),
                        Op::zero(),
                    ));
                }
            }
            self.ident_all(format!("partial symmetries z_[{rank}],j"), pairs);
        }
    }

    fn harmonic_proj(&mut self) {
        let p = Op::proj_harmonic();
        self.ident("Delta proj_H = 0", Op::laplacian() * p.clone(), Op::zero());
        self.ident("proj_H proj_H = proj_H", p.clone() * p.clone(), p);
    }

    fn monogenic_proj(&mut self) {
        let d = self.d();
        let p = Op::proj_monogenic();
        self.ident("D proj_M = 0", Op::dirac(d) * p.clone(), Op::zero());
        self.ident("proj_M proj_M = proj_M", p.clone() * p.clone(), p.clone());
        self.ident("proj_M = proj_(H->M) proj_H", p, Op::proj_h_to_m() * Op::proj_harmonic());
    }

    /// Nonzero images of the spanning set of degree `≤ top` under `op`.
    fn images(&mut self, name: &str, op: &Op, top: usize) -> Option<Vec<SpinorPoly>> {
        let mut out = Vec::new();
        for f in spanning_set(self.ctx, top) {
            match apply_spinor(self.ctx, op, &f) {
                Ok(g) if g.is_zero() => {}
                Ok(g) => {
                    if !out.contains(&g) {
                        out.push(g);
                    }
                }
                Err(e) => {
                    self.push(Check::new(name, false, e.to_string()));
                    return None;
                }
            }
        }
        Some(out)
    }

    fn m_proj(&mut self) {
        let d = self.d();
        let name = "m_j = 2(H - 2) proj_H x_j on harmonics";
        let Some(inputs) = self.images(name, &Op::proj_harmonic(), self.n.saturating_sub(1)) else { return };
        let mut total = 0;
        for j in 0..d {
            let rhs = int(2) * (Op::h(d) - int(2)) * Op::proj_harmonic() * Op::x(j);
            let r = verify_on(self.ctx, &Op::m(d, j), &rhs, &inputs);
            total += r.checked;
            if !r.passed() {
                self.report(format!("{name} [j = {}]", sub1(j)), r);
                return;
            }
        }
        self.push(Check::new(name, true, format!("ok on {total} applications")));
    }

    fn xu(&mut self) {
        let ctx = self.ctx;
        let d = self.d();
        let name = "H_beta = (-1)^n 2^n (gamma - 1 + d/2)_n proj_H(x^beta)";
        let shift = ctx.half_dim_gamma() - Scalar::one();
        let one = SpinorPoly::constant(d, &[Scalar::one()]);
        let mut count = 0;
        for b in std::iter::once(MultiIndex::zero(d)).chain(self.betas(self.n)) {
            let n = b.degree();
            let fail = |detail: String| Check::new(format!("{name} [beta = {b}]"), false, detail);
            let h = match projection::xu_harmonic(ctx, &b) {
                Ok(h) => h,
                Err(e) => return self.push(fail(e.to_string())),
            };
            let xb = SpinorPoly::from_components(vec![Polynomial::monomial(b.clone(), Scalar::one())]);
            let proj = match projection::proj_harmonic(ctx, &xb) {
                Ok(p) => p,
                Err(e) => return self.push(fail(e.to_string())),
            };
            let c = Scalar::sign_pow(n) * Scalar::from_int(2).pow(n as u32) * pochhammer(&shift, n);
            let rhs = proj.scale(&c);
            if rhs.component(0) != &h {
                return self.push(fail(format!("H_beta = {h}, rhs = {rhs}")));
            }
            // m^β(1) = (−1)^n H_β
            match apply_spinor(ctx, &Op::m_pow(d, &b), &one) {
                Ok(m) if m.component(0) == &h.scale(&Scalar::sign_pow(n)) => {}
                Ok(m) => return self.push(fail(format!("m^beta(1) = {m}, H_beta = {h}"))),
                Err(e) => return self.push(fail(e.to_string())),
            }
            count += 1;
        }
        self.push(Check::new(name, true, format!("{count} multi-indices, with m^beta(1) = (-1)^n H_beta")));
    }

    fn z_proj(&mut self) {
        let ctx = self.ctx;
        let d = self.d();
        let eps = ctx.eps();
        // H acts on the degree n − 1 input; on the degree-n output this is H − 1
        let name = "z_j = 2 eps (H - 1) proj_M x_j on monogenics";
        if let Some(inputs) = self.images(name, &Op::proj_monogenic(), self.n.saturating_sub(1)) {
            let mut total = 0;
            let mut ok = true;
            for j in 0..d {
                let rhs = s(Scalar::from_int(2) * eps.scalar()) * (Op::h(d) - Op::id()) * Op::proj_monogenic() * Op::x(j);
                let r = verify_on(ctx, &Op::z(ctx, j), &rhs, &inputs);
                total += r.checked;
                if !r.passed() {
                    self.report(format!("{name} [j = {}]", sub1(j)), r);
                    ok = false;
                    break;
                }
            }
            if ok {
                self.push(Check::new(name, true, format!("ok on {total} applications")));
            }
        }
        let spinors = ctx.spinor_basis();
        let pairs: Vec<_> = self
            .betas(self.n)
            .into_iter()
            .map(|b| {
                let n = b.degree();
                let c = eps.pow(n) * Scalar::from_int(2).pow(n as u32) * pochhammer(&ctx.half_dim_gamma(), n);
                let rhs = s(c) * Op::proj_monogenic() * Op::mul_poly(Polynomial::monomial(b.clone(), Scalar::one()));
                let lhs = Op::z_pow(eps, d, &b);
                (b, lhs, rhs)
            })
            .collect();
        let name = "z^beta = eps^n 2^n (gamma + d/2)_n proj_M x^beta on spinors";
        for (b, lhs, rhs) in &pairs {
            let r = verify_on(ctx, lhs, rhs, &spinors);
            if !r.passed() {
                return self.report(format!("{name} [beta = {b}]"), r);
            }
        }
        self.push(Check::new(name, true, format!("{} multi-indices", pairs.len())));
    }

    fn bases(&mut self) {
        let ctx = self.ctx;
        let n = self.n;
        let d = self.d();
        for deg in 0..=n {
            self.push(basis_check(ctx, BasisKind::Maxwell, deg));
        }
        for deg in 0..=n {
            self.push(bases::check_linear_relation(ctx, deg));
            self.push(bases::check_near_xu_relation(ctx, deg));
            self.push(bases::check_elimination(ctx, deg));
        }
        if ctx.group().kappa_list().iter().all(|k| k.real_cmp_zero() == Some(std::cmp::Ordering::Greater)) {
            for deg in 0..=n {
                self.push(bases::fischer_check(ctx, deg).unwrap_or_else(|e| Check::new("Fischer decomposition", false, e.to_string())));
            }
        }
        if ctx.group().is_z2() {
            for kind in [BasisKind::Ck, BasisKind::PartialZ] {
                for deg in 0..=n {
                    self.push(basis_check(ctx, kind, deg));
                }
            }
        }
        if d >= 2 {
            self.push(round_trip(ctx, n));
        }
    }

    fn tower(&mut self) {
        let ctx = self.ctx;
        if !ctx.group().is_z2() || ctx.dim() < 2 {
            return;
        }
        let other = Context::new(ctx.group().clone(), match ctx.eps() {
            Eps::Plus => Eps::Minus,
            Eps::Minus => Eps::Plus,
        });
        for c in [ctx, &other] {
            for check in tower_checks(c, &TowerRanges::for_degree(self.n)) {
                self.push(check);
            }
        }
    }
}

fn basis_check(ctx: &Context, kind: BasisKind, n: usize) -> Check {
    let name = format!("{kind} basis, n = {n}");
    match bases::build_basis(ctx, kind, n) {
        Ok(b) => Check::new(
            name,
            true,
            format!("{} elements, rank {} of {}, in ker D", b.elements.len(), b.certificate.rank, b.certificate.expected),
        ),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

/// Expresses the monogenic projection of a seeded random polynomial in each basis and expands it back.
fn round_trip(ctx: &Context, n: usize) -> Check {
    let name = format!("basis round trip, n = {n}");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut p = SpinorPoly::zero(ctx.dim(), ctx.spinor_size());
    for m in MultiIndex::all_of_degree(ctx.dim(), n) {
        for s in 0..ctx.spinor_size() {
            let mono = Polynomial::monomial(m.clone(), Scalar::from_int(rng.gen_range(-5..6)));
            p.add_assign(&SpinorPoly::tensor(&mono, &ctx.spinor().basis_vector(s)));
        }
    }
    let f = match projection::proj_monogenic(ctx, &p) {
        Ok(f) => f,
        Err(e) => return Check::new(name, false, e.to_string()),
    };
    let kinds: &[BasisKind] =
        if ctx.group().is_z2() { &[BasisKind::Maxwell, BasisKind::Ck, BasisKind::PartialZ] } else { &[BasisKind::Maxwell] };
    for &kind in kinds {
        let result = bases::build_basis(ctx, kind, n).and_then(|b| {
            let c = bases::coordinates_in(ctx, &b, &f)?;
            Ok(c.map(|c| bases::expand(&b, &c, ctx.dim(), ctx.spinor_size()) == f))
        });
        match result {
            Ok(Some(true)) => {}
            Ok(Some(false)) => return Check::new(name, false, format!("{kind}: expansion differs")),
            Ok(None) => return Check::new(name, false, format!("{kind}: no unique coordinates")),
            Err(e) => return Check::new(name, false, e.to_string()),
        }
    }
    Check::new(name, true, format!("{} bases", kinds.len()))
}

/// Ranges for the CK-side constant checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerRanges {
    /// `m` in the step induction and `j` in `z_{[2]}^j`
    pub step: usize,
    /// `m` for `D_{[k]} x̲^m`
    pub dirac_m: usize,
    /// degree of the operand monogenics
    pub operand_degree: usize,
    /// `j, m` for the level-`k` identities
    pub level_power: usize,
    /// degrees of the CK and Φ bases and `|j|` for `Φ = c Ψ`
    pub basis_degree: usize,
}

impl TowerRanges {
    /// `N = 4` gives the full desk-scale sweep: 6, 6, 3, 4, 4.
    pub fn for_degree(n: usize) -> Self {
        TowerRanges {
            step: (n + 2).min(6),
            dirac_m: (n + 2).min(6),
            operand_degree: n.saturating_sub(1).min(3),
            level_power: n.min(4),
            basis_degree: n.min(4),
        }
    }
}

fn tower_checks(ctx: &Context, r: &TowerRanges) -> Vec<Check> {
    let tag = format!("eps = {}", ctx.eps());
    let mut out = Vec::new();
    let wrap = |res: Result<Check, bases::BasisError>, label: &str| {
        let mut c = res.unwrap_or_else(|e| Check::new(label, false, e.to_string()));
        c.name = format!("{} ({tag})", c.name);
        c
    };
    let spinors = ctx.spinor_size();
    for m in 0..=r.step {
        for s in 0..spinors {
            out.push(wrap(bases::check_step_induction(ctx, m, s), "A_m"));
        }
    }
    for j in 0..=r.step {
        for s in 0..spinors {
            out.push(wrap(bases::check_z2_ck(ctx, j, s), "a_2^j"));
        }
    }
    for k in 1..=ctx.dim().min(3) {
        let degrees = if k == 1 { 0..=0 } else { 0..=r.operand_degree };
        for n in degrees {
            for m in 0..=r.dirac_m {
                out.push(wrap(bases::check_dirac_on_vec_power(ctx, k, n, m), "D_[k] x^m"));
            }
        }
    }
    if ctx.dim() >= 3 {
        for n in 0..=r.operand_degree {
            for m in 0..=r.level_power {
                out.push(wrap(bases::check_induction_step(ctx, 3, n, m), "B"));
                out.push(wrap(bases::check_zk_ck(ctx, 3, n, m), "b"));
            }
        }
    }
    for kind in [BasisKind::Ck, BasisKind::PartialZ] {
        for n in 0..=r.basis_degree {
            let mut c = basis_check(ctx, kind, n);
            c.name = format!("{} ({tag})", c.name);
            out.push(c);
        }
    }
    for n in 0..=r.basis_degree {
        for j in bases::indices_with_zero(ctx.dim(), n, ctx.dim() - 1) {
            for s in 0..spinors {
                out.push(wrap(bases::check_phi_psi(ctx, &j, s), "c_j"));
            }
        }
    }
    out
}
