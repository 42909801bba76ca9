//! Convolution identities for L-additive functions, in particular the
//! arithmetic derivative `delta` (with `h = id`) and the completely additive
//! logarithmic derivative `ld` (with `h = 1`).

use super::verify::{Identity, IdentityInstance};
use super::{Builtin, FunctionExpr};
use crate::ladditive::LAdditiveFunction;
use crate::rational::frac;

fn b(builtin: Builtin) -> FunctionExpr {
    FunctionExpr::Builtin(builtin)
}

fn one() -> FunctionExpr {
    b(Builtin::One)
}

fn id() -> FunctionExpr {
    b(Builtin::IdPow(1))
}

fn id_k(k: i32) -> FunctionExpr {
    b(Builtin::IdPow(k))
}

fn mu() -> FunctionExpr {
    b(Builtin::Mu)
}

fn tau() -> FunctionExpr {
    b(Builtin::Tau)
}

fn sigma() -> FunctionExpr {
    b(Builtin::Sigma(1))
}

fn phi() -> FunctionExpr {
    b(Builtin::Phi)
}

fn eps() -> FunctionExpr {
    b(Builtin::Eps)
}

fn delta() -> FunctionExpr {
    FunctionExpr::additive(LAdditiveFunction::delta())
}

fn ld() -> FunctionExpr {
    FunctionExpr::additive(LAdditiveFunction::ld())
}

fn identity(name: &str, statement: &str, instances: Vec<IdentityInstance>) -> Identity {
    Identity { name: name.to_string(), statement: statement.to_string(), instances }
}

/// `f * g = (f/h) . (h * g) - h * (f . g / h)` for an L-additive `f`.
pub fn l_additive_convolution(f: &LAdditiveFunction, g: FunctionExpr) -> (FunctionExpr, FunctionExpr) {
    let fe = FunctionExpr::additive(f.clone());
    let h = FunctionExpr::multiplier(f.clone());
    let lhs = fe.clone().conv(g.clone());
    let rhs = fe.clone().over(h.clone()).times(h.clone().conv(g.clone())).minus(h.clone().conv(fe.times(g).over(h)));
    (lhs, rhs)
}

/// `f * g = f . (1 * g) - 1 * (f . g)` for a completely additive `f`.
fn completely_additive_convolution(f: FunctionExpr, g: FunctionExpr) -> (FunctionExpr, FunctionExpr) {
    let lhs = f.clone().conv(g.clone());
    let rhs = f.clone().times(one().conv(g.clone())).minus(one().conv(f.times(g)));
    (lhs, rhs)
}

fn inst(label: &str, (lhs, rhs): (FunctionExpr, FunctionExpr)) -> IdentityInstance {
    IdentityInstance::new(label, lhs, rhs)
}

pub fn identities(seed: u64) -> Vec<Identity> {
    let d = LAdditiveFunction::delta();
    let h_delta = FunctionExpr::multiplier(d.clone());
    let half = frac(1, 2);

    let thm22 = [("g=1", one()), ("g=id", id()), ("g=mu.id", mu().times(id())), ("g=phi.id", phi().times(id()))]
        .into_iter()
        .map(|(label, g)| inst(label, l_additive_convolution(&d, g)))
        .collect();

    let cor22 = [("g=1", one()), ("g=id", id()), ("g=id_2", id_k(2))]
        .into_iter()
        .map(|(label, g)| {
            let lhs = delta().conv(g.clone());
            let rhs =
                delta().times(id_k(-1)).times(id().conv(g.clone())).minus(id().conv(g.times(delta()).times(id_k(-1))));
            inst(label, (lhs, rhs))
        })
        .collect();

    let eq19 = [("g=1", one()), ("g=id", id()), ("g=tau", tau())]
        .into_iter()
        .map(|(label, g)| inst(label, completely_additive_convolution(ld(), g)))
        .collect();

    let eq20 = [("f=1", one()), ("f=id", id())]
        .into_iter()
        .map(|(label, f)| inst(label, completely_additive_convolution(ld(), f)))
        .collect();

    let eq21 = [("f=1", one()), ("f=id", id()), ("f=id_2", id_k(2))]
        .into_iter()
        .map(|(label, f)| {
            let lhs = delta().conv(id().times(f.clone()));
            let rhs = delta().times(one().conv(f.clone())).minus(id().conv(f.times(delta())));
            inst(label, (lhs, rhs))
        })
        .collect();

    let (u, v) = (b(Builtin::Random(seed)), b(Builtin::Random(seed.wrapping_add(1))));

    vec![
        identity("thm2.2", "f * g = (f/h_f).(h_f * g) - h_f * (f.g/h_f), f = delta", thm22),
        identity(
            "cor2.1",
            "f * mu.h_f = -(h_f * mu.f), f = delta",
            vec![inst("f=delta", (delta().conv(mu().times(h_delta.clone())), h_delta.conv(mu().times(delta())).neg()))],
        ),
        identity("cor2.2", "delta * g = (delta/id).(id * g) - id * (g.delta/id)", cor22),
        identity(
            "eq13",
            "id * delta = 1/2 tau.delta",
            vec![inst("", (id().conv(delta()), tau().times(delta()).scaled(half.clone())))],
        ),
        identity(
            "eq14",
            "sigma * delta = 1/2 (1 * tau.delta)",
            vec![inst("", (sigma().conv(delta()), one().conv(tau().times(delta())).scaled(half.clone())))],
        ),
        identity(
            "eq15",
            "delta = 1/2 (id.mu * tau.delta)",
            vec![inst("", (delta(), id().times(mu()).conv(tau().times(delta())).scaled(half.clone())))],
        ),
        identity(
            "eq16",
            "id * id.delta = sigma.delta - id_2 * delta",
            vec![inst("", (id().conv(id().times(delta())), sigma().times(delta()).minus(id_k(2).conv(delta()))))],
        ),
        identity(
            "cor2.6",
            "id.mu * delta = -(id * mu.delta)",
            vec![inst("", (id().times(mu()).conv(delta()), id().conv(mu().times(delta())).neg()))],
        ),
        identity(
            "cor2.7",
            "id.phi * delta = id.delta - id * phi.delta",
            vec![inst(
                "",
                (id().times(phi()).conv(delta()), id().times(delta()).minus(id().conv(phi().times(delta())))),
            )],
        ),
        identity("eq19", "f * g = f.(1 * g) - 1 * f.g, f = ld", eq19),
        identity("eq20", "ld * f = ld.(1 * f) - 1 * ld.f", eq20),
        identity("eq21", "delta * id.f = delta.(1 * f) - id * f.delta", eq21),
        identity(
            "compadd-distr",
            "f.(u * v) = (f.u) * v + u * (f.v), f = ld, u = 1, v = id",
            vec![inst(
                "",
                (ld().times(one().conv(id())), ld().times(one()).conv(id()).plus(one().conv(ld().times(id())))),
            )],
        ),
        identity(
            "compmult-distr",
            "h.(u * v) = (h.u) * (h.v), h = id, u and v random",
            vec![inst(
                &format!("u=rand:{seed},v=rand:{}", seed.wrapping_add(1)),
                (id().times(u.clone().conv(v.clone())), id().times(u).conv(id().times(v))),
            )],
        ),
        identity(
            "mobius",
            "1 * mu = eps, id.mu * id = eps, 1 * phi = id",
            vec![
                inst("1*mu", (one().conv(mu()), eps())),
                inst("id.mu*id", (id().times(mu()).conv(id()), eps())),
                inst("1*phi", (one().conv(phi()), id())),
            ],
        ),
    ]
}
