#pragma once

// Regular Delta-complexes: identified simplices with ordered face lists.
// Simplices carry explicit ids rather than vertex sets because distinct
// simplices may share a vertex set (parallel edges, identified cells).
//
// Face convention: faces[i] of a k-simplex is the (k-1)-face obtained by
// deleting vertex i, so the simplicial identity reads
//   face_i(face_j(s)) == face_{j-1}(face_i(s))   for i < j.
// For an edge [u, v] this means faces = [v, u].

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropx {

enum class ComplexError {
  DuplicateId,
  MissingFace,
  NonRegular,
  Disconnected,
  DimensionExceeded,
  FaceMapsDontCommute,
  BadRecord,
};

struct ComplexBuildError : std::runtime_error {
  ComplexError code;
  ComplexBuildError(ComplexError c, const std::string& msg)
      : std::runtime_error(msg), code(c) {}
};

// Raw input record for one simplex.
struct SimplexRecord {
  std::string id;
  int dim = 0;
  std::vector<std::string> faces;  // ids of (dim-1)-simplices, face-map order
};

struct SimplexId {
  int dim = -1;
  int index = -1;
  bool operator==(const SimplexId&) const = default;
  auto operator<=>(const SimplexId&) const = default;
  bool valid() const { return dim >= 0 && index >= 0; }
};

class DeltaComplex {
 public:
  struct Simplex {
    std::string id;
    std::vector<int> faces;     // indices into the (dim-1) list
    std::vector<int> vertices;  // vertex indices, face-map order
  };

  // Incidence of a simplex in a one-higher simplex.
  struct Coface {
    int simplex = -1;  // index in the (dim+1) list
    int position = 0;  // which face slot points back down
  };

  DeltaComplex() = default;

  static DeltaComplex build(int n, const std::vector<SimplexRecord>& records) {
    DeltaComplex dc;
    if (n < 1) throw ComplexBuildError(ComplexError::BadRecord, "ambient dimension must be >= 1");
    dc.n_ = n;
    dc.simplices_.resize(n + 1);

    std::map<std::string, SimplexId> by_id;
    for (const auto& rec : records) {
      if (rec.dim < 0) throw ComplexBuildError(ComplexError::BadRecord, "negative dimension: " + rec.id);
      if (rec.dim > n)
        throw ComplexBuildError(ComplexError::DimensionExceeded,
                                "simplex " + rec.id + " exceeds ambient dimension");
      if (by_id.count(rec.id))
        throw ComplexBuildError(ComplexError::DuplicateId, "duplicate simplex id: " + rec.id);
      if (rec.faces.size() != static_cast<std::size_t>(rec.dim + 1) && rec.dim > 0)
        throw ComplexBuildError(ComplexError::BadRecord,
                                "simplex " + rec.id + " needs " + std::to_string(rec.dim + 1) + " faces");
      if (rec.dim == 0 && !rec.faces.empty())
        throw ComplexBuildError(ComplexError::BadRecord, "vertex " + rec.id + " must have no faces");
      SimplexId sid{rec.dim, static_cast<int>(dc.simplices_[rec.dim].size())};
      by_id[rec.id] = sid;
      Simplex s;
      s.id = rec.id;
      dc.simplices_[rec.dim].push_back(std::move(s));
    }

    // Resolve face ids now that every simplex has an index.
    for (const auto& rec : records) {
      SimplexId sid = by_id.at(rec.id);
      Simplex& s = dc.simplices_[sid.dim][sid.index];
      for (const auto& fid : rec.faces) {
        auto it = by_id.find(fid);
        if (it == by_id.end() || it->second.dim != rec.dim - 1)
          throw ComplexBuildError(ComplexError::MissingFace,
                                  "simplex " + rec.id + ": face " + fid + " not found in dimension " +
                                      std::to_string(rec.dim - 1));
        s.faces.push_back(it->second.index);
      }
      std::set<int> distinct(s.faces.begin(), s.faces.end());
      if (distinct.size() != s.faces.size())
        throw ComplexBuildError(ComplexError::NonRegular, "simplex " + rec.id + " has a repeated face");
    }

    dc.finalize();
    return dc;
  }

  int dimension() const { return n_; }
  std::size_t count(int dim) const {
    return dim >= 0 && dim <= n_ ? simplices_[dim].size() : 0;
  }
  const Simplex& simplex(int dim, int index) const { return simplices_[dim][index]; }
  const Simplex& simplex(SimplexId s) const { return simplices_[s.dim][s.index]; }
  const std::string& id_of(SimplexId s) const { return simplex(s).id; }

  SimplexId find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return SimplexId{};
    return it->second;
  }
  SimplexId require(const std::string& id) const {
    SimplexId s = find(id);
    if (!s.valid()) throw std::out_of_range("unknown simplex id: " + id);
    return s;
  }

  // Cofaces one dimension up of simplex (dim, index).
  const std::vector<Coface>& cofaces(int dim, int index) const { return cofaces_[dim][index]; }

  // Number of facets containing the given ridge.
  int ridge_degree(int ridge) const {
    return static_cast<int>(cofaces_[n_ - 1][ridge].size());
  }

  // Face spanned by the given vertex positions (sorted, distinct).
  SimplexId face_by_positions(SimplexId s, const std::vector<int>& keep) const {
    std::vector<int> drop;
    for (int p = 0; p <= s.dim; ++p)
      if (!std::binary_search(keep.begin(), keep.end(), p)) drop.push_back(p);
    SimplexId cur = s;
    for (auto it = drop.rbegin(); it != drop.rend(); ++it)
      cur = SimplexId{cur.dim - 1, simplices_[cur.dim][cur.index].faces[*it]};
    return cur;
  }

  // Euler characteristic: alternating sum of simplex counts.
  long euler_characteristic() const {
    long chi = 0;
    for (int d = 0; d <= n_; ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(count(d));
    return chi;
  }

  std::vector<SimplexRecord> to_records() const {
    std::vector<SimplexRecord> recs;
    for (int d = 0; d <= n_; ++d)
      for (const auto& s : simplices_[d]) {
        SimplexRecord r;
        r.id = s.id;
        r.dim = d;
        for (int f : s.faces) r.faces.push_back(simplices_[d - 1][f].id);
        recs.push_back(std::move(r));
      }
    return recs;
  }

 private:
  void finalize() {
    for (int d = 0; d <= n_; ++d)
      for (std::size_t i = 0; i < simplices_[d].size(); ++i) {
        if (index_.count(simplices_[d][i].id))
          throw ComplexBuildError(ComplexError::DuplicateId,
                                  "duplicate simplex id: " + simplices_[d][i].id);
        index_[simplices_[d][i].id] = SimplexId{d, static_cast<int>(i)};
      }
    check_face_identities();
    compute_vertices();
    build_cofaces();
    check_connected();
  }

  void check_face_identities() const {
    for (int d = 2; d <= n_; ++d)
      for (const auto& s : simplices_[d])
        for (std::size_t j = 1; j < s.faces.size(); ++j)
          for (std::size_t i = 0; i < j; ++i) {
            const auto& fj = simplices_[d - 1][s.faces[j]];
            const auto& fi = simplices_[d - 1][s.faces[i]];
            if (fj.faces[i] != fi.faces[j - 1])
              throw ComplexBuildError(
                  ComplexError::FaceMapsDontCommute,
                  "face maps of simplex " + s.id + " do not commute at (" + std::to_string(i) +
                      "," + std::to_string(j) + ")");
          }
  }

  void compute_vertices() {
    for (std::size_t i = 0; i < simplices_[0].size(); ++i)
      simplices_[0][i].vertices = {static_cast<int>(i)};
    for (int d = 1; d <= n_; ++d)
      for (auto& s : simplices_[d]) {
        // delete the last vertex to get v_0..v_{d-1}, delete v_0 to get v_d
        const auto& front = simplices_[d - 1][s.faces[d]];
        const auto& back = simplices_[d - 1][s.faces[0]];
        s.vertices = front.vertices;
        s.vertices.push_back(back.vertices[d - 1]);
        // regularity gives pairwise-distinct vertices within one simplex
        std::set<int> distinct(s.vertices.begin(), s.vertices.end());
        if (distinct.size() != s.vertices.size())
          throw ComplexBuildError(ComplexError::NonRegular,
                                  "simplex " + s.id + " has repeated vertices");
      }
  }

  void build_cofaces() {
    cofaces_.assign(n_ + 1, {});
    for (int d = 0; d <= n_; ++d) cofaces_[d].resize(simplices_[d].size());
    for (int d = 1; d <= n_; ++d)
      for (std::size_t i = 0; i < simplices_[d].size(); ++i)
        for (std::size_t p = 0; p < simplices_[d][i].faces.size(); ++p)
          cofaces_[d - 1][simplices_[d][i].faces[p]].push_back(
              Coface{static_cast<int>(i), static_cast<int>(p)});
  }

  void check_connected() const {
    std::size_t total = 0;
    for (int d = 0; d <= n_; ++d) total += simplices_[d].size();
    if (total == 0) throw ComplexBuildError(ComplexError::BadRecord, "empty complex");
    if (simplices_[0].empty())
      throw ComplexBuildError(ComplexError::BadRecord, "complex has no vertices");
    // BFS over vertex--edge incidence, then require every simplex to touch it.
    std::vector<char> seen(simplices_[0].size(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      if (n_ < 1) continue;
      for (const auto& cf : cofaces_[0][v]) {
        for (int w : simplices_[1][cf.simplex].vertices)
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
      }
    }
    for (std::size_t v = 0; v < simplices_[0].size(); ++v)
      if (!seen[v])
        throw ComplexBuildError(ComplexError::Disconnected,
                                "vertex " + simplices_[0][v].id + " unreachable");
  }

  int n_ = 0;
  std::vector<std::vector<Simplex>> simplices_;           // by dimension
  std::vector<std::vector<std::vector<Coface>>> cofaces_;  // by dimension
  std::map<std::string, SimplexId> index_;
};

}  // namespace tropx
