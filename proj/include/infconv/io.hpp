#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "infconv/criteria.hpp"
#include "infconv/fourier.hpp"
#include "infconv/gram.hpp"
#include "infconv/spectrum.hpp"
#include "infconv/types.hpp"

namespace infconv {

/// Shortest round-trip text for a double (%.17g).
std::string format_double(double x);

/// Header x1..xd,weight; coordinates and weights as exact rationals.
void write_atoms_csv(std::ostream& os, const DiscreteMeasure& mu);
DiscreteMeasure read_atoms_csv(std::istream& is);

/// 16-bit greyscale image, rows top to bottom.
struct Pgm {
  std::size_t width = 0;
  std::size_t height = 0;
  std::uint32_t maxval = 65535;
  std::vector<std::uint16_t> pixels;
};

/// clamp(v, 0, 1) * 65535 rounded; axis 0 left to right, the largest second
/// coordinate in the top row. Rasters of dimension 1 become one row.
Pgm raster_to_pgm(const Raster& raster);
void write_pgm(std::ostream& os, const Pgm& img, bool binary = false);
Pgm read_pgm(std::istream& is);

/// Parameter lines "# key=value" preceding a CSV header.
using CsvMeta = std::vector<std::pair<std::string, std::string>>;

void write_samples_csv(std::ostream& os, const std::vector<DVec>& samples, std::size_t dim);
void write_spectra_csv(std::ostream& os, const std::vector<std::vector<IVec>>& spectra, std::size_t dim);
void write_spectrum_csv(std::ostream& os, const std::vector<IVec>& lambda, std::size_t dim, const CsvMeta& meta = {});
void write_candidate_csv(std::ostream& os, const SpectrumCandidate& cand, std::size_t dim);
void write_zeroscan_csv(std::ostream& os, const ZeroScanReport& rep, std::size_t dim);
void write_equipos_csv(std::ostream& os, const std::vector<EquiPosCertificate>& certs, std::size_t dim);
void write_gram_csv(std::ostream& os, const GramReport& rep);
void write_raster_csv(std::ostream& os, const Raster& raster);

}  // namespace infconv
