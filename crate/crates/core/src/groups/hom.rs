use crate::error::{Error, Result};
use crate::groups::GroupTable;

/// A homomorphism given by the image of every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: GroupTable,
    codomain: GroupTable,
    image: Vec<usize>,
}

impl GroupHom {
    /// Checks `φ(gh) = φ(g)φ(h)` for all pairs.
    pub fn new(domain: GroupTable, codomain: GroupTable, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.order() {
            return Err(Error::Dimension(format!(
                "homomorphism needs {} images, got {}",
                domain.order(),
                image.len()
            )));
        }
        if image.iter().any(|&x| x >= codomain.order()) {
            return Err(Error::Input("image index out of range".into()));
        }
        let n = domain.order();
        for a in 0..n {
            for b in 0..n {
                if image[domain.mul(a, b)] != codomain.mul(image[a], image[b]) {
                    return Err(Error::Input(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            image,
        })
    }

    pub fn identity(g: &GroupTable) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            image: (0..g.order()).collect(),
        }
    }

    /// `x ↦ g x g⁻¹`
    pub fn conjugation(g: &GroupTable, by: usize) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            image: (0..g.order()).map(|x| g.conjugate(by, x)).collect(),
        }
    }

    pub fn domain(&self) -> &GroupTable {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupTable {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ first`
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.codomain != self.domain {
            return Err(Error::Dimension("composition of incompatible homomorphisms".into()));
        }
        Ok(GroupHom {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            image: first.image.iter().map(|&x| self.image[x]).collect(),
        })
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.domain.order()).filter(|&g| self.image[g] == 0).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.image.iter().enumerate().all(|(i, &x)| i == x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, symmetric};

    #[test]
    fn rejects_non_homomorphism() {
        let z4 = cyclic(4).unwrap();
        let z2 = cyclic(2).unwrap();
        assert!(GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::new(z4, z2, vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn conjugation_is_automorphism() {
        let s3 = symmetric(3).unwrap();
        for g in 0..6 {
            let c = GroupHom::conjugation(&s3, g);
            assert!(GroupHom::new(s3.clone(), s3.clone(), c.images().to_vec()).is_ok());
            assert!(c.is_injective());
        }
    }
}
