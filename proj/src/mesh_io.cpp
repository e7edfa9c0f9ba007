#include "sfvem/mesh_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <vector>

#include "sfvem/error.hpp"

namespace sfvem {

namespace {

struct Token {
  std::string text;
  int line;
};

class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens_.push_back({w, number});
    }
    last_line_ = number;
  }

  bool done() const { return pos_ >= tokens_.size(); }
  int line() const { return done() ? last_line_ : tokens_[pos_].line; }

  const Token& next(const char* expected) {
    if (done()) throw ParseError(last_line_, std::string("unexpected end of file, expected ") + expected);
    return tokens_[pos_++];
  }

  void keyword(const std::string& word) {
    const Token& t = next(word.c_str());
    if (t.text != word) throw ParseError(t.line, "expected '" + word + "', found '" + t.text + "'");
  }

  long integer(const char* what) {
    const Token& t = next(what);
    long v = 0;
    auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || end != t.text.data() + t.text.size())
      throw ParseError(t.line, std::string("expected integer ") + what + ", found '" + t.text + "'");
    return v;
  }

  double real(const char* what) {
    const Token& t = next(what);
    try {
      std::size_t used = 0;
      const double v = std::stod(t.text, &used);
      if (used == t.text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(t.line, std::string("expected number ") + what + ", found '" + t.text + "'");
  }

  std::string peek() const { return done() ? std::string() : tokens_[pos_].text; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

long count(Tokens& t, const char* what) {
  const int line = t.line();
  const long n = t.integer(what);
  if (n < 0 || n > 100000000) throw ParseError(line, std::string("invalid ") + what + " count " + std::to_string(n));
  return n;
}

}  // namespace

PolyMesh read_mesh(std::istream& in) {
  Tokens t(in);
  t.keyword("sfvem-mesh");
  {
    const int line = t.line();
    if (t.integer("format version") != 1) throw ParseError(line, "unsupported format version");
  }
  t.keyword("vertices");
  const long nv = count(t, "vertex");
  std::vector<Point> vertices(nv);
  for (auto& v : vertices) {
    v.x() = t.real("vertex x");
    v.y() = t.real("vertex y");
  }

  t.keyword("polygons");
  const long np = count(t, "polygon");
  std::vector<std::vector<int>> polygons(np);
  std::vector<int> polygon_line(np);
  for (long p = 0; p < np; ++p) {
    polygon_line[p] = t.line();
    const long n = t.integer("polygon size");
    if (n < 3) throw ParseError(polygon_line[p], "polygon " + std::to_string(p) + " has fewer than 3 vertices");
    polygons[p].resize(n);
    for (auto& i : polygons[p]) {
      const int line = t.line();
      const long v = t.integer("vertex index");
      if (v < 0 || v >= nv) throw ParseError(line, "vertex index " + std::to_string(v) + " out of range");
      i = static_cast<int>(v);
    }
  }

  std::vector<int> regions;
  if (!t.done()) {
    t.keyword("regions");
    const int line = t.line();
    const long nr = count(t, "region");
    if (nr != np) throw ParseError(line, "region count does not match polygon count");
    regions.resize(nr);
    for (auto& r : regions) r = static_cast<int>(t.integer("region id"));
  }
  if (!t.done()) throw ParseError(t.line(), "trailing data '" + t.peek() + "'");

  try {
    return PolyMesh::build(std::move(vertices), std::move(polygons), std::move(regions));
  } catch (const ParseError&) {
    throw;
  } catch (const MeshError& e) {
    const int line = e.polygon() >= 0 ? polygon_line[e.polygon()] : t.line();
    throw ParseError(line, e.what());
  }
}

PolyMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path);
  return read_mesh(in);
}

void write_mesh(const PolyMesh& mesh, std::ostream& out) {
  out << "sfvem-mesh 1\n";
  out << "vertices " << mesh.num_vertices() << '\n' << std::setprecision(17);
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << '\n';
  out << "polygons " << mesh.num_polygons() << '\n';
  for (const auto& poly : mesh.polygons()) {
    out << poly.size();
    for (int i : poly) out << ' ' << i;
    out << '\n';
  }
  out << "regions " << mesh.num_polygons() << '\n';
  for (int r : mesh.regions()) out << r << '\n';
}

void save_mesh(const PolyMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write mesh file " + path);
  write_mesh(mesh, out);
  if (!out) throw Error("failed writing mesh file " + path);
}

}  // namespace sfvem
