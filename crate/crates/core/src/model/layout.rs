use super::Instance;

/// Gene offsets of the network chromosome.
///
/// | segment | genes | meaning                                   |
/// |---------|-------|-------------------------------------------|
/// | A       | K     | plant open keys                           |
/// | B       | J     | DC open keys                              |
/// | C       | S·K   | supplier → plant allocation weights       |
/// | D       | K·J   | plant → DC allocation weights             |
/// | E       | J·I   | retailer assignment keys                  |
/// | F       | J·T   | per-DC inbound timing weights             |
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenotypeLayout {
    pub suppliers: usize,
    pub plants: usize,
    pub dcs: usize,
    pub retailers: usize,
    pub periods: usize,
}

impl GenotypeLayout {
    pub fn of(inst: &Instance) -> Self {
        GenotypeLayout {
            suppliers: inst.suppliers,
            plants: inst.plants,
            dcs: inst.dcs,
            retailers: inst.retailers,
            periods: inst.periods,
        }
    }

    pub fn len(&self) -> usize {
        self.timing_offset() + self.dcs * self.periods
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn plant_key(&self, k: usize) -> usize {
        k
    }

    pub fn dc_key(&self, j: usize) -> usize {
        self.plants + j
    }

    pub fn supplier_weight(&self, s: usize, k: usize) -> usize {
        self.plants + self.dcs + s * self.plants + k
    }

    pub fn plant_weight(&self, k: usize, j: usize) -> usize {
        self.plants + self.dcs + self.suppliers * self.plants + k * self.dcs + j
    }

    pub fn assignment_key(&self, j: usize, i: usize) -> usize {
        self.assignment_offset() + j * self.retailers + i
    }

    pub fn timing_weight(&self, j: usize, t: usize) -> usize {
        self.timing_offset() + j * self.periods + t
    }

    fn assignment_offset(&self) -> usize {
        self.plants + self.dcs + self.suppliers * self.plants + self.plants * self.dcs
    }

    /// First gene of segment F.
    pub fn timing_offset(&self) -> usize {
        self.assignment_offset() + self.dcs * self.retailers
    }
}
