#pragma once

#include <optional>
#include <string>
#include <vector>

#include "replikit/qseries.hpp"

namespace replikit {

struct EtaFactor {
    long d; // eta(d tau)
    long r; // exponent
};

struct EtaQuotientSpec {
    std::vector<EtaFactor> terms;
    Rational additive_constant = 0;
    // "plus c/u": adds c times the reciprocal of the bare quotient.
    std::optional<Rational> plus_inverse;
};

// prod_{n>=1} (1 - q^n)
QSeries eta_expansion(long prec);
// prod_d prod_{n>=1} (1 - q^{dn})^{r_d}, without the q^{sum d r_d / 24} factor.
QSeries eta_product(const std::vector<EtaFactor>& terms, long prec);
// The full quotient prod_d eta(d tau)^{r_d} with constants and post ops applied.
QSeries eta_quotient(const EtaQuotientSpec& spec, long prec);

QSeries eisenstein_e4(long prec);
QSeries delta(long prec);
QSeries j_series(long prec);

struct CatalogEntry {
    std::string label;
    std::optional<EtaQuotientSpec> eta; // empty for composite recipes
    std::string recipe;
    std::string notes;
};

const std::vector<CatalogEntry>& catalog();
bool in_catalog(const std::string& label);
// Normalized Hauptmodul expansion known below q^prec.
QSeries catalog_series(const std::string& label, long prec);

} // namespace replikit
