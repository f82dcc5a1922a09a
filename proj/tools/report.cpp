#include "report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace gammalat::cli {

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

Json to_json(const Integer& x) { return x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()); }

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Json to_json(const AbelianGroupInvariants& a) { return a.to_string(); }

std::string fingerprint_digest(const CohFingerprint& f) {
  std::ostringstream os;
  for (std::size_t k = 0; k < f.entries.size(); ++k) {
    const auto& e = f.entries[k];
    os << k << '\t' << e.fixed_rank << '\t' << e.h1.to_string() << '\t' << e.tate_minus1.to_string() << '\n';
  }
  return sha256_hex(os.str());
}

}  // namespace gammalat::cli
