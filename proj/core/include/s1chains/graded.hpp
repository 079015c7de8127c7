#pragma once

#include "s1chains/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace s1chains {

struct Generator {
    std::string name;
    int degree = 0;
    bool operator==(const Generator&) const = default;
};

/// Finitely generated graded module over Z, Q or F_p. Generators are kept
/// sorted by (degree, name); this fixes every matrix in the project.
class GradedModule {
public:
    GradedModule() = default;
    GradedModule(Ring ring, std::vector<Generator> gens);

    const Ring& ring() const { return ring_; }
    const std::vector<Generator>& gens() const { return gens_; }
    std::size_t total_dim() const { return gens_.size(); }

    std::size_t dim(int degree) const;
    /// Generator indices of a given degree, in global order.
    const std::vector<std::size_t>& degree_indices(int degree) const;
    bool has_degree(int degree) const { return by_degree_.count(degree) > 0; }
    int min_degree() const;  // 0 on the empty module
    int max_degree() const;
    std::vector<int> degrees() const;

    std::size_t index_of(const std::string& name) const;  // throws if absent
    bool has(const std::string& name) const { return index_.count(name) > 0; }

    /// Position of a generator inside its degree slice.
    std::size_t slot_in_degree(std::size_t gen_index) const;

    bool operator==(const GradedModule& o) const {
        return ring_ == o.ring_ && gens_ == o.gens_;
    }

private:
    Ring ring_;
    std::vector<Generator> gens_;
    std::map<int, std::vector<std::size_t>> by_degree_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::size_t> slot_;
};

/// Degree-homogeneous linear map between graded modules, stored blockwise:
/// block(k) maps the degree-k slice of the source to degree k+shift of the
/// target. Missing blocks are zero.
class DegreeMap {
public:
    DegreeMap() = default;
    explicit DegreeMap(int shift) : shift_(shift) {}

    int shift() const { return shift_; }
    void set_block(int k, RatMat m);
    void add_entry(const GradedModule& src, const GradedModule& tgt, std::size_t from_gen,
                   std::size_t to_gen, const Rat& coeff);
    RatMat block(int k, const GradedModule& src, const GradedModule& tgt) const;
    const std::map<int, RatMat>& blocks() const { return blocks_; }
    bool is_zero() const;

    RatVec apply_slice(int k, const GradedModule& src, const GradedModule& tgt,
                       const RatVec& v) const {
        return block(k, src, tgt).apply(v);
    }

    DegreeMap negated() const;
    DegreeMap scaled(const Rat& c) const;

    /// this . other, blockwise (source of `other` first).
    DegreeMap compose_after(const DegreeMap& other, const GradedModule& a, const GradedModule& b,
                            const GradedModule& c) const;
    DegreeMap plus(const DegreeMap& other, const GradedModule& src, const GradedModule& tgt) const;

private:
    int shift_ = 0;
    std::map<int, RatMat> blocks_;
};

/// Canonical residues for F_p, trims zero blocks; identity on Z and Q.
DegreeMap normalize_map(const DegreeMap& m, const GradedModule& src, const GradedModule& tgt);

}  // namespace s1chains
