#pragma once

#include <set>
#include <string>

#include "substrate/errors.hpp"

namespace substrate {

// An element of the experience space. Identity is the label.
class Experience {
public:
    explicit Experience(std::string label) : label_(std::move(label)) {
        if (label_.empty()) throw ValidationError("experience label must be nonempty");
    }
    const std::string& label() const { return label_; }

    friend bool operator==(const Experience& a, const Experience& b) { return a.label_ == b.label_; }
    friend auto operator<=>(const Experience& a, const Experience& b) { return a.label_ <=> b.label_; }

private:
    std::string label_;
};

// A finite set of experiences; the value of a prediction. May be empty (an
// empty prediction is legal and counts as maximally uninformative).
class ExperienceSet {
public:
    ExperienceSet() = default;
    explicit ExperienceSet(std::set<std::string> labels) : labels_(std::move(labels)) {}

    void insert(const Experience& e) { labels_.insert(e.label()); }
    void insert(const std::string& label) { labels_.insert(label); }
    void merge(const ExperienceSet& other) { labels_.insert(other.labels_.begin(), other.labels_.end()); }

    bool contains(const Experience& e) const { return labels_.count(e.label()) > 0; }
    bool contains(const std::string& label) const { return labels_.count(label) > 0; }
    bool empty() const { return labels_.empty(); }
    size_t size() const { return labels_.size(); }
    const std::set<std::string>& labels() const { return labels_; }

    bool intersects(const ExperienceSet& other) const {
        const auto& small = labels_.size() <= other.labels_.size() ? labels_ : other.labels_;
        const auto& large = labels_.size() <= other.labels_.size() ? other.labels_ : labels_;
        for (const auto& l : small)
            if (large.count(l)) return true;
        return false;
    }

    ExperienceSet intersection(const ExperienceSet& other) const {
        ExperienceSet out;
        for (const auto& l : labels_)
            if (other.labels_.count(l)) out.labels_.insert(l);
        return out;
    }

    friend bool operator==(const ExperienceSet& a, const ExperienceSet& b) { return a.labels_ == b.labels_; }

private:
    std::set<std::string> labels_;
};

} // namespace substrate
