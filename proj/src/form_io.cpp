#include "bh/form_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace bh {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw FormatError("form line " + std::to_string(number_) + ": " + message);
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

std::string header_value(LineReader& reader, const std::string& key) {
  std::string line;
  if (!reader.next(line)) reader.fail("missing '" + key + "' header");
  std::istringstream fields(line);
  std::string name, value, extra;
  if (!(fields >> name >> value) || name != key || (fields >> extra)) {
    reader.fail("expected '" + key + " <value>'");
  }
  return value;
}

int parse_positive(LineReader& reader, const std::string& text, const std::string& key) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    reader.fail("'" + key + "' is not an integer");
  }
  if (used != text.size() || value < 1) reader.fail("'" + key + "' must be a positive integer");
  return value;
}

}  // namespace

MultilinearForm read_form(std::istream& in, std::size_t entry_budget) {
  LineReader reader(in);
  if (header_value(reader, "bhform") != "1") reader.fail("unsupported format version");
  const int m = parse_positive(reader, header_value(reader, "m"), "m");
  const int n = parse_positive(reader, header_value(reader, "N"), "N");
  const auto field = parse_scalar_field(header_value(reader, "field"));
  if (!field) reader.fail("field must be 'real' or 'complex'");
  if (header_value(reader, "layout") != "row-major") reader.fail("layout must be 'row-major'");
  if (m < 2) reader.fail("degree must be at least 2");

  std::size_t size = 1;
  for (int k = 0; k < m; ++k) {
    if (size > entry_budget / static_cast<std::size_t>(n)) {
      throw ResourceError("form tensor N^m exceeds the entry budget");
    }
    size *= static_cast<std::size_t>(n);
  }

  std::vector<Scalar> coeffs;
  coeffs.reserve(size);
  std::string line;
  while (coeffs.size() < size) {
    if (!reader.next(line)) reader.fail("expected " + std::to_string(size) + " entries");
    std::istringstream fields(line);
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(fields >> re)) reader.fail("unreadable entry");
    if (*field == ScalarField::Complex && !(fields >> im)) reader.fail("complex entry needs 're im'");
    if (fields >> extra) reader.fail("trailing text after entry");
    coeffs.emplace_back(re, im);
  }
  if (reader.next(line)) reader.fail("more entries than N^m");
  try {
    return {m, n, *field, std::move(coeffs), entry_budget};
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

MultilinearForm read_form_file(const std::string& path, std::size_t entry_budget) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open form file '" + path + "'");
  return read_form(in, entry_budget);
}

void write_form(std::ostream& out, const MultilinearForm& form) {
  out << "bhform 1\n"
      << "m " << form.degree() << '\n'
      << "N " << form.dimension() << '\n'
      << "field " << to_string(form.field()) << '\n'
      << "layout row-major\n";
  const auto old_precision = out.precision(17);
  for (const Scalar& c : form.coeffs()) {
    out << c.real();
    if (form.field() == ScalarField::Complex) out << ' ' << c.imag();
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace bh
