//! End-to-end runs assembling checks into [`Report`]s. Every command of the binary is a thin
//! wrapper around one function here.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::genus2::divisor::{admissible_quadric, bisecant_curve, hasse_weil_window, residual_divisor, residual_involution};
use crate::genus2::elliptic::{elliptic_union_web, singular_web_census, MarkedCubic};
use crate::genus2::kummer::{points_on_trope, trope_planes, PolarMap};
use crate::genus2::{discriminant_report, quadric_web, spans_p4, trisecant_absence, web_discriminant, CurvePoint, Embedding, Polarization};
use crate::hilbert::forms_vanishing;
use crate::matrix::Matrix;
use crate::net::{
    admissible_block_net, discriminant_quintic, fixed_point_check, hilbert_signature, random_net, rank_profile, recover_free_involution, recover_involution, BlockNet,
};
use crate::numerology::{castelnuovo_bound, integer_roots, ruled_numerology, segre_quadratic};
use crate::poly::HomogPoly;
use crate::proj::{is_prime_rational, ProjSpace};
use crate::quadrics::SymNet;
use crate::quintic::{analyze, lift_poly, singular_points, SplitVerdict};
use crate::report::{Report, RunConfig};
use crate::rng::stream;
use crate::spacecurve::{
    cone_liaison, cubic_through, liaison_sample_field, double_ideal_dimension, project_from_point, secant_census, with_line, ConePair, ProjLine,
};

/// Where `net` takes its net from.
#[derive(Clone, Debug)]
pub enum NetSource {
    /// Seeded block-diagonal net passing every admissibility check.
    Block,
    /// Seeded net with independent random coefficients.
    Random,
    Fixture(SymNet<Gf>),
}

#[derive(Serialize)]
struct InvolutionData {
    signature: (usize, usize),
    sigma: Vec<Vec<u64>>,
}

/// Discriminant, split verdicts, involution, fixed points and Hilbert signature of a net.
pub fn net_report(cfg: &RunConfig, source: NetSource) -> Result<Report> {
    let f = cfg.field;
    if f.p() == 2 {
        return Err(Error::Input("quadrics need odd characteristic".into()));
    }
    let mut rep = Report::new("net", &f, Some(cfg.seed));
    let (net, kind) = match source {
        NetSource::Block => {
            let (bn, rejected) = admissible_block_net(&f, &mut stream(cfg.seed, 0), cfg.budget_points)?;
            rep.put("rejected_draws", rejected);
            (bn.net, "block")
        }
        NetSource::Random => (random_net(&f, &mut stream(cfg.seed, 0)), "random"),
        NetSource::Fixture(net) => (net, "fixture"),
    };
    rep.put("source", kind);
    rep.put("net", net.to_fixture_text());
    let gamma = discriminant_quintic(&net);
    let quintic = gamma.quintic().cloned();
    rep.put("discriminant", quintic.as_ref().map_or("trigonal".to_string(), |q| q.body_text()));
    let analysis = match &quintic {
        Some(q) => Some(analyze(q, cfg.budget_points)?),
        None => None,
    };
    let split = analysis.as_ref().is_some_and(|a| matches!(a.split_base_field, SplitVerdict::Found { .. }));
    rep.put("split", split);
    rep.put("quintic", &analysis);
    rep.put("rank_census", rank_profile(&net).counts);

    let inv = recover_free_involution(&net, 2)?.map_or_else(|| recover_involution(&net), |i| Ok(Some(i)))?;
    rep.put("involution", inv.as_ref().map(|i| InvolutionData { signature: i.signature, sigma: i.sigma.to_rows() }));
    let fixed = match &inv {
        Some(i) => Some(fixed_point_check(&net, &i.sigma, 2)?),
        None => None,
    };
    rep.put("fixed_points", &fixed);
    let hs = hilbert_signature(&net)?;
    rep.put("hilbert_signature", hs);

    match kind {
        "block" => {
            rep.check("discriminant-splits", split);
            rep.check("involution-signature", inv.as_ref().is_some_and(|i| i.signature == (2, 3)));
            rep.check("involution-fixed-point-free", fixed.as_ref().is_some_and(|r| r.free));
        }
        _ => {
            rep.check("split-iff-involution", split == inv.is_some());
        }
    }
    rep.check("hilbert-signature", hs);
    Ok(rep)
}

/// Singularities, lines and conic factors of a plane quintic.
pub fn quintic_report(p: &HomogPoly<Gf>, budget: u64) -> Result<Report> {
    if p.nvars() != 3 {
        return Err(Error::Input("expected a ternary form".into()));
    }
    let mut rep = Report::new("quintic analyze", p.field(), None);
    let a = analyze(p, budget)?;
    rep.check("degree-five", a.degree == 5);
    rep.check("squarefree", a.squarefree);
    rep.put("analysis", a);
    Ok(rep)
}

/// Which part of the genus-2 pipeline to run. Every stage also runs the web.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G2Stage {
    Web,
    Discriminant,
    Tropes,
    Polar,
    Bisecant,
    All,
}

impl G2Stage {
    fn discriminant(self) -> bool {
        matches!(self, G2Stage::Discriminant | G2Stage::Tropes | G2Stage::Polar | G2Stage::All)
    }
    fn tropes(self) -> bool {
        matches!(self, G2Stage::Tropes | G2Stage::Polar | G2Stage::All)
    }
    fn polar(self) -> bool {
        matches!(self, G2Stage::Polar | G2Stage::All)
    }
    fn bisecant(self) -> bool {
        matches!(self, G2Stage::Bisecant | G2Stage::All)
    }
    pub fn name(self) -> &'static str {
        match self {
            G2Stage::Web => "web",
            G2Stage::Discriminant => "discriminant",
            G2Stage::Tropes => "tropes",
            G2Stage::Polar => "polar",
            G2Stage::Bisecant => "bisecant",
            G2Stage::All => "all",
        }
    }
}

#[derive(Serialize)]
struct TropeData {
    plane: Vec<u64>,
    conic: String,
    nodes_on_plane: usize,
    nodes_on_conic: usize,
    polar_rank: Option<usize>,
}

#[derive(Serialize)]
struct BisecantData {
    quadric: Vec<u64>,
    pairs: usize,
    diagonal: usize,
    window: (f64, f64),
    involution_checked: usize,
    involution_failures: usize,
    residual_degree_four: bool,
}

/// Web, discriminant, tropes, polar map and bisecant curve of an embedded genus-2 curve.
pub fn g2_report(cfg: &RunConfig, emb: &Embedding, stage: G2Stage, quadric: Option<Vec<u64>>) -> Result<Report> {
    let f = *emb.field();
    let ext = emb.sample_field();
    let mut rep = Report::new(&format!("g2 {}", stage.name()), &f, Some(cfg.seed));
    rep.put("curve", emb.curve.to_fixture_text().trim_end());
    rep.put("bundle", emb.bundle);
    let pts = emb.embedded_points(&ext);
    let rational: Vec<Vec<u64>> = pts.iter().filter(|p| is_prime_rational(&ext, p)).cloned().collect();
    rep.put("points_base", rational.len());
    rep.put("points_ext", pts.len());

    let dim = forms_vanishing(&ext, 5, 2, &pts).len();
    rep.put("web_dimension", dim);
    if !rep.check("web-dimension-four", dim == 4) {
        return Ok(rep);
    }
    let web = quadric_web(emb)?;
    rep.put("web", web.to_fixture_text());
    rep.check("spans-p4", spans_p4(&ext, &pts));
    rep.check("no-trisecant", trisecant_absence(&f, &rational));

    if stage.discriminant() {
        let wd = match web_discriminant(&web, cfg.budget_points) {
            Ok(wd) => wd,
            Err(Error::Degenerate(_)) => {
                rep.check("plane-times-quartic", false);
                return Ok(rep);
            }
            Err(e) => return Err(e),
        };
        rep.check("plane-times-quartic", wd.plane.mul(&wd.quartic).is_proportional(&wd.determinant));
        let dr = discriminant_report(&wd)?;
        rep.check("quartic-nodes", dr.quartic_singular == dr.quartic_nodes && dr.quartic_nodes <= 16);
        match emb.bundle {
            Polarization::ThreeK => rep.check("section-double-conic", dr.section_is_double_conic),
            Polarization::TwoKPlus { .. } => {
                rep.check("section-one-singular-point", dr.section_singular_base.len() == 1 && dr.section_singular_ext == 1)
            }
        };
        rep.put("discriminant", &dr);

        if stage.tropes() {
            let tropes = trope_planes(&wd.quartic, cfg.budget_points)?;
            let nodes: Vec<Vec<u64>> = singular_points(&lift_poly(&wd.quartic, &ext)).into_iter().map(|s| s.point).collect();
            let mut data = Vec::new();
            let mut polar_ok = true;
            let mut through_nodes = true;
            let mut first_vertex = true;
            let mut plane_to_conic = true;
            let mut rng = stream(cfg.seed, 1);
            let p3 = ProjSpace::new(f, 3);
            for t in &tropes {
                let on_plane = points_on_trope(t, &ext, &nodes);
                let conic = lift_poly(&t.conic, &ext);
                let on_conic = on_plane.iter().filter(|x| conic.eval(x) == 0).count();
                let mut polar_rank = None;
                if stage.polar() {
                    let pm = PolarMap::new(&wd.quartic, t)?;
                    let r = pm.rank();
                    polar_rank = Some(r);
                    polar_ok &= r == 4;
                    first_vertex &= pm.cubic_adapted(&[1, 0, 0, 0]) == pm.f3;
                    for _ in 0..20 {
                        let x = p3.point(rng.gen_range(0..p3.count()));
                        let c = lift_poly(&pm.cubic_at(&x), &ext);
                        through_nodes &= on_plane.iter().all(|n| c.eval(n) == 0);
                        let y = [0, rng.gen_range(0..f.q()), rng.gen_range(0..f.q()), rng.gen_range(0..f.q())];
                        let cy = pm.cubic_adapted(&y);
                        plane_to_conic &= cy.is_zero() || cy.exact_divide(&pm.conic).is_some();
                    }
                }
                data.push(TropeData { plane: t.plane.clone(), conic: t.conic.body_text(), nodes_on_plane: on_plane.len(), nodes_on_conic: on_conic, polar_rank });
            }
            rep.check("trope-conics-through-nodes", data.iter().all(|d| d.nodes_on_conic == d.nodes_on_plane));
            if stage.polar() {
                rep.check("polar-rank-four", polar_ok);
                rep.check("polar-cubics-through-nodes", through_nodes);
                rep.check("polar-first-vertex", first_vertex);
                rep.check("polar-plane-to-conic", plane_to_conic);
            }
            rep.put("nodes", nodes.len());
            rep.put("tropes", data);
        }
    }

    if stage.bisecant() {
        bisecant_stage(&mut rep, emb, &web, &ext, quadric)?;
    }
    Ok(rep)
}

fn bisecant_stage(rep: &mut Report, emb: &Embedding, web: &crate::quadrics::SymWeb<Gf>, ext: &Gf, quadric: Option<Vec<u64>>) -> Result<()> {
    let f = *emb.field();
    let admissible = |t: &[u64]| -> Result<bool> {
        Ok(match emb.bundle {
            Polarization::ThreeK => admissible_quadric(emb, web, t)?.admissible,
            Polarization::TwoKPlus { .. } => web.at(t).rank() == 5,
        })
    };
    let t = match quadric {
        Some(t) => {
            if t.len() != 4 || t.iter().all(|&c| c == 0) {
                return Err(Error::Input("a web member needs 4 coordinates, not all zero".into()));
            }
            let t: Vec<u64> = t.iter().map(|c| c % f.p()).collect();
            if let Polarization::ThreeK = emb.bundle {
                rep.put("admissibility", admissible_quadric(emb, web, &t)?);
            }
            t
        }
        None => {
            let sp = ProjSpace::new(f, 3);
            let mut found = None;
            for t in sp.iter() {
                if admissible(&t)? {
                    found = Some(t);
                    break;
                }
            }
            found.ok_or_else(|| Error::Degenerate("no admissible web member".into()))?
        }
    };
    if !rep.check("quadric-admissible", admissible(&t)?) {
        rep.put("quadric", t);
        return Ok(());
    }
    let m = web.at(&t);
    let pairs = bisecant_curve(emb, &m, ext)?;
    let window = hasse_weil_window(f.q(), 5);
    let n = pairs.len() as f64;
    rep.check("bisecant-window", window.0 <= n && n <= window.1);

    let mut checked = 0;
    let mut failures = 0;
    for xi in pairs.iter().filter(|x| !x.is_diagonal()) {
        checked += 1;
        let ok = residual_involution(emb, ext, xi)
            .and_then(|x2| Ok(pairs.contains(&x2) && residual_involution(emb, ext, &x2)? == *xi))
            .unwrap_or(false);
        failures += usize::from(!ok);
    }
    rep.check("residual-involution", failures == 0);

    let base_points: Vec<CurvePoint> = emb.curve.points(&f).into_iter().filter(|p| !p.is_weierstrass()).take(3).collect();
    let residual_degree_four = base_points.iter().all(|p| match residual_divisor(emb, &m, ext, p) {
        Ok(r) => r.divisor.degree() == 4,
        Err(e) => matches!(e, Error::Degenerate(_)),
    });
    rep.check("residual-degree-four", residual_degree_four);
    rep.put(
        "bisecant",
        BisecantData {
            quadric: t,
            pairs: pairs.len(),
            diagonal: pairs.iter().filter(|p| p.is_diagonal()).count(),
            window,
            involution_checked: checked,
            involution_failures: failures,
            residual_degree_four,
        },
    );
    Ok(())
}

/// The projected curve of a net with an involution: the image of the base curve from a
/// rational point, the exceptional line, and the sample `C' + L` over the quadratic extension.
#[derive(Clone, Debug)]
pub struct SpaceCurveModel {
    pub center: Vec<u64>,
    pub projected: Vec<Vec<u64>>,
    pub collisions: usize,
    pub line: ProjLine,
    /// Points of the projected curve on the exceptional line.
    pub line_meets: usize,
    /// Projected points together with the points of the exceptional line.
    pub sample: Vec<Vec<u64>>,
}

/// Project the base curve of `net` from its first rational point and add the image of the
/// `(-1)`-eigenline of `sigma`.
pub fn space_curve_model(net: &SymNet<Gf>, sigma: &Matrix<Gf>, budget: u64) -> Result<Option<SpaceCurveModel>> {
    let f = *net.field();
    let ext = f.extension(2)?;
    let base = net.base_locus(budget)?;
    let Some(center) = base.first().cloned() else {
        return Ok(None);
    };
    let pts = net.lift(&ext)?.base_locus(budget)?;
    let proj = project_from_point(&f, &ext, &pts, &center)?;
    let minus = sigma.add(&Matrix::identity(&f, 5)).nullspace();
    if minus.len() != 2 {
        return Err(Error::Input("the involution's (-1)-eigenspace is not a line".into()));
    }
    let a = proj.matrix.mul_vec(&minus[0]);
    let b = proj.matrix.mul_vec(&minus[1]);
    let line = ProjLine::through(&f, &a, &b).ok_or_else(|| Error::Degenerate("the eigenline passes through the center".into()))?;
    let line_meets = proj.points.iter().filter(|p| line.contains(&ext, p)).count();
    let sample = with_line(&ext, &proj.points, &line);
    Ok(Some(SpaceCurveModel { center, projected: proj.points, collisions: proj.collisions, line, line_meets, sample }))
}

/// Quadrisecant window `q + 1 +- 4 sqrt(q) +- 8`.
pub fn quadrisecant_window(q: u64) -> (f64, f64) {
    let (lo, hi) = hasse_weil_window(q, 2);
    (lo - 8.0, hi + 8.0)
}

#[derive(Serialize)]
struct ModelData {
    center: Vec<u64>,
    projected_points: usize,
    collisions: usize,
    exceptional_line: Vec<Vec<u64>>,
    line_meets_curve: usize,
}

fn census_checks(rep: &mut Report, cfg: &RunConfig, model: &SpaceCurveModel, ideals: bool) -> Result<()> {
    let f = cfg.field;
    let ext = f.extension(2)?;
    rep.put(
        "model",
        ModelData {
            center: model.center.clone(),
            projected_points: model.projected.len(),
            collisions: model.collisions,
            exceptional_line: model.line.rows.to_vec(),
            line_meets_curve: model.line_meets,
        },
    );
    let census = secant_census(&f, &ext, &model.sample, std::slice::from_ref(&model.line), cfg.budget_lines)?;
    let window = quadrisecant_window(f.q());
    let n = census.at_least(4) as f64;
    rep.check("no-5-secant", census.at_least(5) == 0);
    rep.check("quadrisecants-through-point", census.max_quadrisecants_through_point <= 2);
    rep.check("quadrisecant-window", window.0 <= n && n <= window.1);
    rep.put("secant_histogram", &census.histogram);
    rep.put("quadrisecant_lines", census.at_least(4));
    rep.put("max_quadrisecants_through_point", census.max_quadrisecants_through_point);
    rep.put("window", window);
    if ideals {
        let cubics = cubic_through(&ext, &model.sample);
        let double7 = double_ideal_dimension(&ext, &model.sample, 7);
        rep.check("no-cubic-through", cubics == 0);
        rep.check("double-ideal-degree-7", double7 >= 4);
        rep.put("cubics_through", cubics);
        rep.put("cubics_through_without_line", cubic_through(&ext, &model.projected));
        rep.put("double_ideal_degree_7", double7);
    }
    Ok(())
}

/// The projected-curve checks for a given net and involution. Smoothness, Hilbert signature
/// and fixed-point freedom come first; later stages run only when the curve is smooth.
pub fn pipeline_3_16_for(cfg: &RunConfig, net: &SymNet<Gf>, sigma: Option<&Matrix<Gf>>) -> Result<Report> {
    let f = cfg.field;
    let ext = f.extension(2)?;
    let mut rep = Report::new("pipeline-3-16", &f, Some(cfg.seed));
    rep.put("net", net.to_fixture_text());
    let base = net.base_locus(cfg.budget_points)?;
    let over_ext = net.lift(&ext)?.base_locus(cfg.budget_points)?;
    let smooth = net.smoothness_check(&base) && net.lift(&ext)?.smoothness_check(&over_ext);
    rep.put("base_points", base.len());
    rep.put("base_points_ext", over_ext.len());
    rep.put("singular_base_points", net.singular_base_points(&base));
    let smooth = rep.check("base-locus-smooth", smooth);
    let hs = rep.check("hilbert-signature", hilbert_signature(net)?);
    let Some(sigma) = sigma else {
        rep.check("involution-found", false);
        return Ok(rep);
    };
    let free = rep.check("involution-fixed-point-free", fixed_point_check(net, sigma, 2).is_ok_and(|r| r.free));
    if !(smooth && hs && free) {
        return Ok(rep);
    }
    match space_curve_model(net, sigma, cfg.budget_points)? {
        Some(model) => census_checks(&mut rep, cfg, &model, true)?,
        None => {
            rep.check("rational-center", false);
        }
    }
    Ok(rep)
}

/// Draw admissible block nets from the seed until one has a rational point, then run
/// [`pipeline_3_16_for`].
pub fn pipeline_3_16(cfg: &RunConfig) -> Result<Report> {
    let (bn, draws) = seeded_model_net(cfg)?;
    let mut rep = pipeline_3_16_for(cfg, &bn.net, Some(&bn.pair.witness_involution()))?;
    rep.put("draws", draws);
    Ok(rep)
}

fn seeded_model_net(cfg: &RunConfig) -> Result<(BlockNet<Gf>, u64)> {
    for s in 0..64u64 {
        let (bn, _) = admissible_block_net(&cfg.field, &mut stream(cfg.seed, s), cfg.budget_points)?;
        if !bn.net.base_locus(cfg.budget_points)?.is_empty() {
            return Ok((bn, s + 1));
        }
    }
    Err(Error::Degenerate("no admissible net with a rational point in 64 draws".into()))
}

/// Secant census of the seeded projected curve, without the ideal checks.
pub fn census_report(cfg: &RunConfig) -> Result<Report> {
    let (bn, draws) = seeded_model_net(cfg)?;
    let mut rep = Report::new("p3 census", &cfg.field, Some(cfg.seed));
    rep.put("draws", draws);
    let model = space_curve_model(&bn.net, &bn.pair.witness_involution(), cfg.budget_points)?
        .ok_or_else(|| Error::Degenerate("the model net has no rational point".into()))?;
    census_checks(&mut rep, cfg, &model, false)?;
    Ok(rep)
}

/// Cone liaison of the common line: residual degree 8 with both vertices singular on it.
pub fn liaison_report(cfg: &RunConfig, cones: &ConePair) -> Result<Report> {
    let f = *cones.first.field();
    let mut rep = Report::new("p3 liaison", &f, Some(cfg.seed));
    liaison_checks(&mut rep, cones)?;
    Ok(rep)
}

/// Residual points needed before interpolation sees the whole curve: past `8 * 7` a degree-7
/// form vanishing on them contains every component of degree 8.
pub const LIAISON_SAMPLE: usize = 64;

fn liaison_checks(rep: &mut Report, cones: &ConePair) -> Result<()> {
    rep.put("cones", [cones.first.body_text(), cones.second.body_text()]);
    let ext = liaison_sample_field(cones, LIAISON_SAMPLE)?;
    rep.put("sample_field", ext.tag());
    let (_, lr) = cone_liaison(cones, &ext)?;
    rep.check("residual-degree-8", lr.residual_degree == 8);
    rep.check("vertices-singular", lr.vertices_singular());
    rep.put("liaison", lr);
    Ok(())
}

#[derive(Serialize)]
struct NumerologyData {
    segre: Vec<SegreRow>,
    ruled: Vec<((i64, i64), crate::numerology::RuledNumbers)>,
    castelnuovo: Vec<(i64, i64)>,
}

#[derive(Serialize)]
struct SegreRow {
    degree: i64,
    surface_degree: i64,
    base_genus: i64,
    quadratic: (i64, i64, i64),
    integer_roots: Vec<i64>,
}

/// The integer identities for genus-5 curves on ruled surfaces and their quadrisecant surfaces.
pub fn numerology_report() -> Report {
    let f = Gf::prime(2).expect("prime");
    let mut rep = Report::new("p3 numerology", &f, None);
    rep.field = "ZZ".into();
    let segre: Vec<SegreRow> = [(8, 3, 0), (8, 3, 1), (7, 3, 0), (7, 3, 1)]
        .into_iter()
        .map(|(d, s, sigma)| {
            let quadratic = segre_quadratic(d, s, sigma, 5);
            SegreRow { degree: d, surface_degree: s, base_genus: sigma, quadratic, integer_roots: integer_roots(quadratic.0, quadratic.1, quadratic.2) }
        })
        .collect();
    rep.check("segre-root-three", segre[0].quadratic == (3, -17, 24) && segre[0].integer_roots == vec![3]);
    let ruled: Vec<((i64, i64), _)> = [(6, 2), (6, 3)].into_iter().map(|(n, p)| ((n, p), ruled_numerology(n, p))).collect();
    rep.check("ruled-genus", ruled[0].1.genus == 5 && ruled[1].1.genus == 6);
    rep.check("double-curve", ruled[0].1.double_curve == 8);
    let castelnuovo: Vec<(i64, i64)> = (4..=7).map(|n| (n, castelnuovo_bound(n))).collect();
    rep.check("castelnuovo", castelnuovo.iter().map(|c| c.1).eq([1, 2, 4, 6]));
    rep.put("numbers", NumerologyData { segre, ruled, castelnuovo });
    rep
}

/// Census of the web through two glued cubics, then the liaison of the cones over them.
pub fn pipeline_liaison(cfg: &RunConfig, first: MarkedCubic, second: MarkedCubic) -> Result<Report> {
    let f = *first.cubic.field();
    let mut rep = Report::new("pipeline-liaison", &f, Some(cfg.seed));
    rep.put("cubics", [first.cubic.body_text(), second.cubic.body_text()]);
    let cones = cones_over(&first, &second)?;
    let eu = elliptic_union_web(first, second)?;
    let census = singular_web_census(&eu);
    rep.check("web-members-singular", census.max_rank <= 4);
    rep.check("node-in-every-vertex", census.node_in_every_kernel);
    rep.check("low-rank-members-split", census.factored == census.low_rank_members);
    rep.put("union_points", eu.points.len());
    rep.put("web", eu.web.to_fixture_text());
    rep.put("census", census);
    liaison_checks(&mut rep, &cones)?;
    Ok(rep)
}

/// Cones over two marked cubics with vertices `(1:0:0:0)`, `(0:1:0:0)` and the marked points on
/// the common line, changing coordinates on `x2, x3` in the second so the cones are not
/// tangent along the line.
pub fn cones_over(first: &MarkedCubic, second: &MarkedCubic) -> Result<ConePair> {
    let a = first.cone(0);
    let b = second.cone(1);
    let f = *a.field();
    let tangent = |g: &HomogPoly<Gf>, v: usize| -> Vec<u64> {
        [2usize, 3].iter().map(|&j| {
            let mut m = [0u8; 5];
            m[v] = 2;
            m[j] = 1;
            g.coeff(&m)
        }).collect()
    };
    let ta = tangent(&a, 1);
    let shears: [[[u64; 2]; 2]; 4] = [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]], [[1, 0], [1, 1]]];
    for s in shears {
        let rows: Vec<Vec<u64>> = (0..4)
            .map(|i| match i {
                2 | 3 => vec![0, 0, s[i - 2][0], s[i - 2][1]],
                _ => (0..4).map(|j| u64::from(i == j)).collect(),
            })
            .collect();
        let bs = b.linear_change(&rows);
        let tb = tangent(&bs, 0);
        let det = f.sub(&f.mul(&ta[0], &tb[1]), &f.mul(&ta[1], &tb[0]));
        if det != 0 {
            return ConePair::new(a, bs);
        }
    }
    Err(Error::Degenerate("cones are tangent along the common line".into()))
}

/// Seeded Weierstrass cubic `x1^2 x2 = x0^3 + a x0 x2^2 + b x2^3` with marked point `(0:1:0)`.
pub fn random_marked_cubic(field: &Gf, rng: &mut rand_chacha::ChaCha8Rng) -> Result<MarkedCubic> {
    let q = field.q();
    for _ in 0..1000 {
        let a = rng.gen_range(0..q);
        let b = rng.gen_range(0..q);
        let (na, nb) = (field.neg(&a), field.neg(&b));
        let body = format!("x1^2*x2 + {}*x0^3 + {na}*x0*x2^2 + {nb}*x2^3", field.neg(&1));
        let cubic = HomogPoly::parse_body(field, 3, &body, 3)?;
        match MarkedCubic::new(cubic, vec![0, 1, 0]) {
            Ok(mc) => return Ok(mc),
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate("no smooth cubic in 1000 draws".into()))
}
