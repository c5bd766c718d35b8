use super::ModelError;

/// Per-period stock position of one DC and product.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    /// On-hand stock at the end of each period (earliness, `z`).
    pub on_hand: Vec<f64>,
    /// Unmet demand carried out of each period (tardiness, `b`).
    pub backlog: Vec<f64>,
    pub shipped: Vec<f64>,
}

/// Rolls stock forward one period at a time:
///
/// ```text
/// available_t = z_{t-1} + inflow_t
/// shipped_t   = min(available_t, demand_t + b_{t-1})
/// z_t         = available_t - shipped_t
/// b_t         = b_{t-1} + demand_t - shipped_t
/// ```
pub fn simulate_schedule(inflow: &[f64], demand: &[f64]) -> Result<Schedule, ModelError> {
    if inflow.len() != demand.len() {
        return Err(ModelError::Dimension {
            expected: demand.len(),
            found: inflow.len(),
        });
    }
    if let Some(x) = inflow.iter().chain(demand).find(|x| x.is_nan() || **x < 0.0) {
        return Err(ModelError::Argument(format!(
            "schedule inputs must be nonnegative, found {x}"
        )));
    }
    let n = demand.len();
    let mut out = Schedule {
        on_hand: Vec::with_capacity(n),
        backlog: Vec::with_capacity(n),
        shipped: Vec::with_capacity(n),
    };
    let (mut stock, mut owed) = (0.0f64, 0.0f64);
    for (&arriving, &due) in inflow.iter().zip(demand) {
        let available = stock + arriving;
        let wanted = owed + due;
        let shipped = available.min(wanted);
        stock = available - shipped;
        owed = wanted - shipped;
        out.on_hand.push(stock);
        out.backlog.push(owed);
        out.shipped.push(shipped);
    }
    Ok(out)
}

/// Delivers requested DC inflows through plants that produce at a level
/// rate.
///
/// `share[k][j]` is plant `k`'s fraction of DC `j`'s supply and
/// `requested[j][t]` the inbound quantity DC `j` asks for in period `t`.
/// Plant `k` ships at most `rate[k]` per period; whatever it cannot ship
/// stays pending and is offered again next period, split across DCs in
/// proportion to what each is owed. Returns realized inflow `[j][t]`.
pub fn deliver_level(share: &[Vec<f64>], requested: &[Vec<f64>], rate: &[f64]) -> Vec<Vec<f64>> {
    let dcs = requested.len();
    let periods = requested.first().map_or(0, Vec::len);
    let mut inflow = vec![vec![0.0; periods]; dcs];
    let mut pending = vec![vec![0.0; dcs]; share.len()];
    for t in 0..periods {
        for (k, owed) in pending.iter_mut().enumerate() {
            for j in 0..dcs {
                owed[j] += share[k][j] * requested[j][t];
            }
            let total: f64 = owed.iter().sum();
            if total <= 0.0 {
                continue;
            }
            let fraction = if total <= rate[k] { 1.0 } else { rate[k] / total };
            for j in 0..dcs {
                let sent = owed[j] * fraction;
                inflow[j][t] += sent;
                owed[j] -= sent;
            }
        }
    }
    inflow
}
