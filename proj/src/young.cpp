#include "nhilb/young.hpp"

#include <functional>
#include <numeric>
#include <string>

#include "nhilb/errors.hpp"

namespace nhilb {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw UsageError("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw UsageError("partition parts must be weakly decreasing");
    }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::row_length(int row) const {
    return row >= 0 && row < num_rows() ? parts_[row] : 0;
}

int Partition::column_height(int col) const {
    int h = 0;
    while (h < num_rows() && parts_[h] > col) ++h;
    return h;
}

bool Partition::contains(const Cell& c) const {
    return c.row >= 0 && c.col >= 0 && c.col < row_length(c.row);
}

std::vector<Cell> Partition::cells() const {
    std::vector<Cell> out;
    for (int r = 0; r < num_rows(); ++r)
        for (int c = 0; c < parts_[r]; ++c) out.push_back({r, c});
    return out;
}

std::vector<Cell> Partition::addable_cells() const {
    std::vector<Cell> out;
    for (int r = 0; r <= num_rows(); ++r) {
        const int c = row_length(r);
        if (r == 0 || row_length(r - 1) > c) out.push_back({r, c});
    }
    return out;
}

Partition Partition::with_cell(const Cell& c) const {
    const bool addable = c.col == row_length(c.row) && (c.row == 0 || row_length(c.row - 1) > c.col) &&
                         c.row <= num_rows();
    if (!addable) throw DomainError("cell is not an addable corner of the partition");
    std::vector<int> parts = parts_;
    if (c.row == num_rows())
        parts.push_back(1);
    else
        ++parts[c.row];
    return Partition(std::move(parts));
}

nlohmann::json NestedPair::to_json() const {
    return {{"lambda", lambda.to_json()}, {"box", {box.row, box.col}}};
}

std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw UsageError("partitions_of: n must be >= 0");
    std::vector<Partition> out;
    std::vector<int> current;
    // Reverse lexicographic: (n), (n-1,1), ...
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            current.push_back(p);
            rec(remaining - p, p);
            current.pop_back();
        }
    };
    rec(n, n);
    return out;
}

std::vector<NestedPair> nested_pairs(int n) {
    std::vector<NestedPair> out;
    for (auto& lambda : partitions_of(n))
        for (const auto& box : lambda.addable_cells()) out.push_back({lambda, box});
    return out;
}

ArmLeg arm_leg(const Partition& mu, const Cell& c) {
    if (!mu.contains(c)) throw DomainError("arm_leg: cell not in diagram");
    return {mu.row_length(c.row) - c.col - 1, mu.column_height(c.col) - c.row - 1};
}

std::pair<int, int> cell_weight(const Cell& c) { return {c.col, c.row}; }

RowColSplit row_col_cells(const Partition& mu, const Cell& box) {
    if (!mu.contains(box)) throw DomainError("row_col_cells: box not in diagram");
    RowColSplit split;
    for (const auto& c : mu.cells()) {
        if (c == box) continue;
        if (c.row == box.row)
            split.row.push_back(c);
        else if (c.col == box.col)
            split.col.push_back(c);
        else
            split.rest.push_back(c);
    }
    return split;
}

}  // namespace nhilb
