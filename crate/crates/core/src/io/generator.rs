use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::Instance;

/// Knobs of the synthetic instance generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub name: String,
    pub suppliers: usize,
    pub plants: usize,
    pub dcs: usize,
    pub retailers: usize,
    pub products: usize,
    pub periods: usize,
    /// Currency per product unit; sets the magnitude of every cost.
    pub cost_scale: f64,
    /// Mean units demanded per retailer, product and period.
    pub demand_scale: f64,
    /// Total DC holding capacity over total demand; at least 1.
    pub capacity_slack: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// One facility per echelon over two periods.
    Tiny,
    /// 3 suppliers, 2 plants, 3 DCs, 8 retailers, 7 periods.
    Desk,
    /// Weekly costs in the tens of millions, as in the soft-drink case.
    SbcScale,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Tiny, Preset::Desk, Preset::SbcScale];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Tiny => "tiny",
            Preset::Desk => "desk",
            Preset::SbcScale => "sbc-scale",
        }
    }

    pub fn params(self, seed: u64) -> GeneratorParams {
        let (s, k, j, i, t, cost, demand) = match self {
            Preset::Tiny => (1, 1, 1, 1, 2, 1.0, 5.0),
            Preset::Desk => (3, 2, 3, 8, 7, 1000.0, 20.0),
            Preset::SbcScale => (4, 3, 5, 30, 7, 250.0, 400.0),
        };
        GeneratorParams {
            name: format!("{}-{seed}", self.name()),
            suppliers: s,
            plants: k,
            dcs: j,
            retailers: i,
            products: 1,
            periods: t,
            cost_scale: cost,
            demand_scale: demand,
            capacity_slack: 1.3,
            seed,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}` (expected one of: tiny, desk, sbc-scale)"))
    }
}

/// Builds a random instance that always passes validation.
///
/// Demand follows a shared per-period pattern with retailer noise, so
/// peaks exceed what a single plant can deliver at its level rate. Total DC
/// capacity is exactly `capacity_slack` times total demand; plant and
/// supplier capacities carry the same slack over the raw-material need.
pub fn generate_instance(params: &GeneratorParams) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (ns, nk, nj, ni, np, nt) = (
        params.suppliers,
        params.plants,
        params.dcs,
        params.retailers,
        params.products,
        params.periods,
    );
    let slack = params.capacity_slack.max(1.0);
    let c = params.cost_scale;

    let pattern: Vec<f64> = (0..nt).map(|_| rng.random_range(0.4..1.6)).collect();
    let demand: Vec<Vec<Vec<f64>>> = (0..ni)
        .map(|_| {
            let size = rng.random_range(0.5..1.5);
            (0..np)
                .map(|_| {
                    pattern
                        .iter()
                        .map(|&w| (params.demand_scale * size * w * rng.random_range(0.8..1.2)).round())
                        .collect()
                })
                .collect()
        })
        .collect();
    let total: f64 = demand.iter().flatten().flatten().sum();
    let per_product: Vec<f64> = (0..np)
        .map(|p| demand.iter().map(|r| r[p].iter().sum::<f64>()).sum())
        .collect();
    let busiest = per_product.iter().cloned().fold(0.0, f64::max);
    let utilization = rng.random_range(1.0..1.5f64);

    let dc_capacity = split(&mut rng, slack * total, nj);
    let plant_capacity = {
        let raw = utilization * busiest * slack;
        let mut caps: Vec<f64> = (0..nk).map(|_| raw * rng.random_range(0.7..1.0)).collect();
        let sum: f64 = caps.iter().sum();
        if sum < raw {
            caps.iter_mut().for_each(|x| *x *= raw / sum);
        }
        caps
    };
    let supplier_capacity = split(&mut rng, 1.2 * slack * utilization * busiest, ns);

    let mut range = |lo: f64, hi: f64, n: usize| -> Vec<f64> { (0..n).map(|_| c * rng.random_range(lo..hi)).collect() };
    let plant_fixed_cost = range(0.15 * total, 0.25 * total, nk);
    let dc_fixed_cost = range(0.03 * total, 0.06 * total, nj);
    let raw_material_cost = range(0.8, 1.2, ns);
    let raw_transport_cost = (0..ns).map(|_| range(0.05, 0.2, nk)).collect();
    let plant_dc_cost = (0..nk).map(|_| range(0.1, 0.4, nj)).collect();
    let dc_retailer_cost = (0..nj).map(|_| range(0.05, 0.3, ni)).collect();
    let holding_cost = range(0.02, 0.06, nj);

    let backorder_limit = (0..np)
        .map(|p| {
            let period_total: Vec<f64> = (0..nt).map(|t| demand.iter().map(|r| r[p][t]).sum()).collect();
            vec![period_total; nj]
        })
        .collect();

    Instance {
        name: params.name.clone(),
        currency_unit: "TZS/week".into(),
        time_unit: "day".into(),
        suppliers: ns,
        plants: nk,
        dcs: nj,
        retailers: ni,
        products: np,
        periods: nt,
        supplier_capacity,
        plant_capacity,
        dc_capacity,
        demand,
        plant_fixed_cost,
        dc_fixed_cost,
        raw_material_cost,
        raw_transport_cost,
        plant_dc_cost,
        dc_retailer_cost,
        holding_cost,
        utilization,
        backorder_limit,
    }
}

/// Random positive parts of `total`; the last part absorbs rounding so the
/// parts add up to `total`.
fn split(rng: &mut ChaCha8Rng, total: f64, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
    let sum: f64 = w.iter().sum();
    let mut parts: Vec<f64> = w.iter().map(|x| total * x / sum).collect();
    let head: f64 = parts[..n - 1].iter().sum();
    parts[n - 1] = total - head;
    parts
}
