use super::{DecodedNetwork, Instance};

/// Excess below this fraction of the compared magnitudes is rounding noise.
const EXCESS_RTOL: f64 = 1e-9;

pub const FAMILY_COUNT: usize = 8;

pub const FAMILY_NAMES: [&str; FAMILY_COUNT] = [
    "dc holding capacity",
    "allowable backorder",
    "dc supply covers retailer shipments",
    "supplier capacity",
    "raw material covers production",
    "plant capacity",
    "single dc per retailer",
    "horizon demand balance",
];

/// Constraint excess per family, raw and scaled by each term's capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violations {
    pub raw: [f64; FAMILY_COUNT],
    pub normalized: [f64; FAMILY_COUNT],
}

impl Violations {
    pub fn total(&self) -> f64 {
        self.normalized.iter().sum()
    }

    pub fn is_feasible(&self) -> bool {
        self.total() == 0.0
    }
}

#[derive(Default)]
struct Tally {
    raw: [f64; FAMILY_COUNT],
    normalized: [f64; FAMILY_COUNT],
}

impl Tally {
    /// Records `lhs <= rhs`, normalized by `scale`.
    fn at_most(&mut self, family: usize, lhs: f64, rhs: f64, scale: f64) {
        let excess = lhs - rhs;
        if excess > EXCESS_RTOL * lhs.abs().max(rhs.abs()).max(1.0) {
            self.raw[family] += excess;
            self.normalized[family] += excess / positive_or_one(scale);
        }
    }

    fn equal(&mut self, family: usize, lhs: f64, rhs: f64, scale: f64) {
        self.at_most(family, lhs, rhs, scale);
        self.at_most(family, rhs, lhs, scale);
    }
}

fn positive_or_one(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        1.0
    }
}

/// Evaluates every constraint family against a network.
///
/// Capacities apply per product. Each excess is divided by the capacity or
/// quantity it is measured against so families are comparable in size.
pub fn check_constraints(net: &DecodedNetwork, inst: &Instance) -> Violations {
    let mut t = Tally::default();
    let u = inst.utilization;
    let (ns, nk, nj, ni) = (inst.suppliers, inst.plants, inst.dcs, inst.retailers);

    for (p, dcs) in net.schedule.iter().enumerate() {
        for (j, dc) in dcs.iter().enumerate() {
            let q_cap = inst.dc_capacity[j];
            for (tt, (&z, &b)) in dc.on_hand.iter().zip(&dc.backlog).enumerate() {
                t.at_most(0, z, q_cap, q_cap);
                let limit = inst.backorder_limit[p][j][tt];
                t.at_most(1, b, limit, limit);
            }
        }
    }

    for p in 0..inst.products {
        let f = &net.product_flow[p];
        let r = &net.raw_flow[p];
        let q = &net.retail_flow[p];
        for j in 0..nj {
            let outbound: f64 = q[j].iter().sum();
            let inbound: f64 = (0..nk).map(|k| f[k][j]).sum();
            t.at_most(2, outbound, inbound, outbound);
        }
        for s in 0..ns {
            let sent: f64 = r[s].iter().sum();
            t.at_most(3, sent, inst.supplier_capacity[s], inst.supplier_capacity[s]);
        }
        for k in 0..nk {
            let need = u * f[k].iter().sum::<f64>();
            let received: f64 = (0..ns).map(|s| r[s][k]).sum();
            t.at_most(4, need, received, need);
            t.at_most(5, need, inst.plant_capacity[k], inst.plant_capacity[k]);
        }
        for i in 0..ni {
            let horizon: f64 = inst.demand[i][p].iter().sum();
            let delivered: f64 = (0..nj).map(|j| q[j][i]).sum();
            t.equal(7, delivered, horizon, horizon);
        }
    }

    for i in 0..ni {
        let serving = (0..nj).filter(|&j| net.assignment[j][i]).count() as f64;
        t.equal(6, serving, 1.0, 1.0);
        let to_closed = (0..nj).filter(|&j| net.assignment[j][i] && !net.dc_open[j]).count() as f64;
        t.at_most(6, to_closed, 0.0, 1.0);
    }

    Violations {
        raw: t.raw,
        normalized: t.normalized,
    }
}
