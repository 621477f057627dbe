#pragma once

// Young diagrams and nested pairs (lambda, box) with mu = lambda + box.
//
// Cells are (row, col) with row 0 the longest row. A cell has torus weight
// q^col t^row; its arm counts cells to its right in the same row and its leg
// counts cells above it (higher row index) in the same column.

#include <compare>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace nhilb {

struct Cell {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

class Partition {
public:
    Partition() = default;
    // Throws UsageError unless parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const;
    int num_rows() const { return static_cast<int>(parts_.size()); }
    int row_length(int row) const;
    int column_height(int col) const;

    bool contains(const Cell& c) const;
    std::vector<Cell> cells() const;  // row by row, left to right
    std::vector<Cell> addable_cells() const;  // in increasing row order
    Partition with_cell(const Cell& c) const;  // c must be addable

    nlohmann::json to_json() const { return parts_; }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

struct NestedPair {
    Partition lambda;
    Cell box;

    Partition mu() const { return lambda.with_cell(box); }
    nlohmann::json to_json() const;
};

std::vector<Partition> partitions_of(int n);
std::vector<NestedPair> nested_pairs(int n);

struct ArmLeg {
    int arm = 0;
    int leg = 0;
};
ArmLeg arm_leg(const Partition& mu, const Cell& c);

// (q-exponent, t-exponent) of the cell's torus weight.
std::pair<int, int> cell_weight(const Cell& c);

struct RowColSplit {
    std::vector<Cell> row;   // same row as the box, box excluded
    std::vector<Cell> col;   // same column as the box, box excluded
    std::vector<Cell> rest;  // everything else in mu
};
RowColSplit row_col_cells(const Partition& mu, const Cell& box);

}  // namespace nhilb
