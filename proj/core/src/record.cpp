// SPDX-License-Identifier: Apache-2.0
#include <lamina/record.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

namespace lamina
{
    namespace
    {
        std::size_t roundUp(std::size_t value, std::size_t align) noexcept
        {
            return (value + align - 1) / align * align;
        }

        bool validTag(std::string_view tag) noexcept
        {
            if(tag.empty())
                return false;
            if(std::isdigit(static_cast<unsigned char>(tag.front())) != 0)
                return false;
            return std::all_of(
                tag.begin(),
                tag.end(),
                [](unsigned char c) { return std::isalnum(c) != 0 || c == '_'; });
        }
    } // namespace

    std::string RecordCoord::toString() const
    {
        std::string out = "[";
        for(std::size_t i = 0; i < path_.size(); ++i)
        {
            if(i > 0)
                out += ',';
            out += std::to_string(path_[i]);
        }
        out += ']';
        return out;
    }

    std::ostream& operator<<(std::ostream& os, const RecordCoord& c)
    {
        return os << c.toString();
    }

    RecordSchema RecordSchema::leaf(Scalar s)
    {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Leaf;
        n->scalar = s;
        return RecordSchema(std::move(n));
    }

    RecordSchema RecordSchema::record(std::vector<std::pair<std::string, RecordSchema>> fields)
    {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Record;
        std::unordered_set<std::string> seen;
        for(auto& [tag, child] : fields)
        {
            if(!validTag(tag))
                throw std::invalid_argument("invalid field tag: '" + tag + "'");
            if(!seen.insert(tag).second)
                throw std::invalid_argument("duplicate field tag: '" + tag + "'");
            n->fields.push_back(Field{std::move(tag), child.root_});
        }
        return RecordSchema(std::move(n));
    }

    RecordSchema RecordSchema::fixedArray(std::uint64_t count, const RecordSchema& element)
    {
        if(count < 1)
            throw std::invalid_argument("fixed array count must be >= 1");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::FixedArray;
        n->count = count;
        n->element = element.root_;
        return RecordSchema(std::move(n));
    }

    namespace
    {
        void collectLeaves(
            const RecordSchema::NodePtr& node,
            std::vector<std::uint32_t>& path,
            std::string& name,
            std::vector<RecordSchema::LeafDesc>& out)
        {
            using Kind = RecordSchema::Node::Kind;
            switch(node->kind)
            {
            case Kind::Leaf:
            {
                RecordSchema::LeafDesc d;
                d.coord = RecordCoord(path);
                d.path = name;
                d.type = node->scalar;
                d.size = scalarSize(node->scalar);
                out.push_back(std::move(d));
                break;
            }
            case Kind::Record:
                for(std::size_t i = 0; i < node->fields.size(); ++i)
                {
                    const auto nameLen = name.size();
                    if(!name.empty())
                        name += '.';
                    name += node->fields[i].tag;
                    path.push_back(static_cast<std::uint32_t>(i));
                    collectLeaves(node->fields[i].node, path, name, out);
                    path.pop_back();
                    name.resize(nameLen);
                }
                break;
            case Kind::FixedArray:
                for(std::uint64_t i = 0; i < node->count; ++i)
                {
                    const auto nameLen = name.size();
                    name += '[';
                    name += std::to_string(i);
                    name += ']';
                    path.push_back(static_cast<std::uint32_t>(i));
                    collectLeaves(node->element, path, name, out);
                    path.pop_back();
                    name.resize(nameLen);
                }
                break;
            }
        }
    } // namespace

    RecordSchema::RecordSchema(NodePtr root) : root_(std::move(root))
    {
        auto info = std::make_shared<Info>();
        std::vector<std::uint32_t> path;
        std::string name;
        collectLeaves(root_, path, name, info->leaves);

        std::size_t packed = 0;
        std::size_t aligned = 0;
        std::size_t maxAlign = 1;
        for(auto& d : info->leaves)
        {
            d.offsetPacked = packed;
            packed += d.size;
            aligned = roundUp(aligned, d.size);
            d.offsetAligned = aligned;
            aligned += d.size;
            maxAlign = std::max(maxAlign, d.size);
        }
        info->sizePacked = packed;
        info->sizeAligned = roundUp(aligned, maxAlign);
        info->alignment = maxAlign;
        info_ = std::move(info);
    }

    RecordSchema::NodePtr RecordSchema::nodeAt(const RecordCoord& coord) const noexcept
    {
        NodePtr n = root_;
        for(const auto idx : coord.path())
        {
            if(n == nullptr || idx >= n->childCount())
                return nullptr;
            n = n->childAt(idx);
        }
        return n;
    }

    std::size_t RecordSchema::flatIndexOf(const RecordCoord& coord) const
    {
        const auto node = nodeAt(coord);
        if(node == nullptr || node->kind != Node::Kind::Leaf)
            throw std::invalid_argument("coordinate not a leaf");
        // leaves are stored in DFS pre-order, so their coords sort
        // lexicographically; binary search recovers the flat index
        const auto& leaves = info_->leaves;
        const auto it = std::lower_bound(
            leaves.begin(),
            leaves.end(),
            coord,
            [](const LeafDesc& d, const RecordCoord& c) { return d.coord < c; });
        return static_cast<std::size_t>(it - leaves.begin());
    }

    RecordSchema RecordSchema::subSchema(const RecordCoord& coord) const
    {
        auto node = nodeAt(coord);
        if(node == nullptr)
            throw std::invalid_argument("no such field: coordinate " + coord.toString());
        return RecordSchema(std::move(node));
    }

    std::pair<std::size_t, std::size_t> RecordSchema::leafRange(const RecordCoord& coord) const
    {
        if(nodeAt(coord) == nullptr)
            throw std::invalid_argument("no such field: coordinate " + coord.toString());
        const auto& leaves = info_->leaves;
        std::size_t first = leaves.size();
        std::size_t last = leaves.size();
        for(std::size_t i = 0; i < leaves.size(); ++i)
        {
            if(coord.isPrefixOf(leaves[i].coord))
            {
                if(first == leaves.size())
                    first = i;
                last = i + 1;
            }
        }
        if(first == leaves.size())
            first = last = 0;
        return {first, last};
    }

    RecordCoord RecordSchema::coordOf(std::string_view dottedPath) const
    {
        std::vector<std::uint32_t> path;
        NodePtr n = root_;
        std::size_t pos = 0;
        const auto descend = [&](std::string_view segment)
        {
            if(n == nullptr)
                throw std::invalid_argument("no such field: '" + std::string(segment) + "'");
            if(!segment.empty() && std::isdigit(static_cast<unsigned char>(segment.front())) != 0)
            {
                const auto idx = static_cast<std::uint32_t>(std::stoul(std::string(segment)));
                if(idx >= n->childCount())
                    throw std::invalid_argument("no such field: index " + std::string(segment));
                path.push_back(idx);
                n = n->childAt(idx);
                return;
            }
            if(n->kind != Node::Kind::Record)
                throw std::invalid_argument("no such field: '" + std::string(segment) + "'");
            for(std::size_t i = 0; i < n->fields.size(); ++i)
            {
                if(n->fields[i].tag == segment)
                {
                    path.push_back(static_cast<std::uint32_t>(i));
                    n = n->fields[i].node;
                    return;
                }
            }
            throw std::invalid_argument("no such field: '" + std::string(segment) + "'");
        };

        while(pos < dottedPath.size())
        {
            const std::size_t next = dottedPath.find_first_of(".[", pos);
            if(next == std::string_view::npos)
            {
                descend(dottedPath.substr(pos));
                pos = dottedPath.size();
                break;
            }
            if(next > pos)
                descend(dottedPath.substr(pos, next - pos));
            if(dottedPath[next] == '.')
            {
                pos = next + 1;
                continue;
            }
            // bracketed array index
            const std::size_t close = dottedPath.find(']', next);
            if(close == std::string_view::npos)
                throw std::invalid_argument("no such field: unbalanced '[' in path");
            descend(dottedPath.substr(next + 1, close - next - 1));
            pos = close + 1;
            if(pos < dottedPath.size() && dottedPath[pos] == '.')
                ++pos;
        }
        return RecordCoord(std::move(path));
    }

    std::string RecordSchema::pathOf(const RecordCoord& coord) const
    {
        std::string out;
        NodePtr n = root_;
        for(const auto idx : coord.path())
        {
            if(n == nullptr || idx >= n->childCount())
                throw std::invalid_argument("no such field: coordinate " + coord.toString());
            if(n->kind == Node::Kind::Record)
            {
                if(!out.empty())
                    out += '.';
                out += n->fields[idx].tag;
            }
            else
            {
                out += '[';
                out += std::to_string(idx);
                out += ']';
            }
            n = n->childAt(idx);
        }
        return out;
    }

    bool RecordSchema::sameTree(const NodePtr& a, const NodePtr& b) noexcept
    {
        if(a == b)
            return true;
        if(a == nullptr || b == nullptr || a->kind != b->kind)
            return false;
        switch(a->kind)
        {
        case Node::Kind::Leaf:
            return a->scalar == b->scalar;
        case Node::Kind::FixedArray:
            return a->count == b->count && sameTree(a->element, b->element);
        case Node::Kind::Record:
            if(a->fields.size() != b->fields.size())
                return false;
            for(std::size_t i = 0; i < a->fields.size(); ++i)
                if(a->fields[i].tag != b->fields[i].tag || !sameTree(a->fields[i].node, b->fields[i].node))
                    return false;
            return true;
        }
        return false;
    }

    namespace
    {
        void printNode(std::ostream& os, const RecordSchema::NodePtr& node)
        {
            using Kind = RecordSchema::Node::Kind;
            switch(node->kind)
            {
            case Kind::Leaf:
                os << scalarName(node->scalar);
                break;
            case Kind::Record:
                os << "Record{";
                for(std::size_t i = 0; i < node->fields.size(); ++i)
                {
                    if(i > 0)
                        os << ',';
                    os << node->fields[i].tag << ':';
                    printNode(os, node->fields[i].node);
                }
                os << '}';
                break;
            case Kind::FixedArray:
            {
                // fold nested arrays into a bracket chain, outermost first
                std::vector<std::uint64_t> counts;
                auto inner = node;
                while(inner->kind == Kind::FixedArray)
                {
                    counts.push_back(inner->count);
                    inner = inner->element;
                }
                printNode(os, inner);
                for(const auto c : counts)
                    os << '[' << c << ']';
                break;
            }
            }
        }

        struct SchemaParser
        {
            std::string_view text;
            std::size_t pos = 0;

            void skipWs()
            {
                while(pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0)
                    ++pos;
            }

            char peek()
            {
                skipWs();
                return pos < text.size() ? text[pos] : '\0';
            }

            bool consume(char c)
            {
                if(peek() == c)
                {
                    ++pos;
                    return true;
                }
                return false;
            }

            void expect(char c)
            {
                if(!consume(c))
                    throw std::invalid_argument(
                        "schema parse error at position " + std::to_string(pos) + ": expected '" + c + "'");
            }

            std::string word()
            {
                skipWs();
                const std::size_t start = pos;
                while(pos < text.size()
                      && (std::isalnum(static_cast<unsigned char>(text[pos])) != 0 || text[pos] == '_'))
                    ++pos;
                if(pos == start)
                    throw std::invalid_argument(
                        "schema parse error at position " + std::to_string(pos) + ": expected identifier");
                return std::string(text.substr(start, pos - start));
            }

            std::uint64_t number()
            {
                skipWs();
                const std::size_t start = pos;
                while(pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) != 0)
                    ++pos;
                if(pos == start)
                    throw std::invalid_argument(
                        "schema parse error at position " + std::to_string(pos) + ": expected number");
                return std::stoull(std::string(text.substr(start, pos - start)));
            }

            RecordSchema node()
            {
                RecordSchema base = baseNode();
                std::vector<std::uint64_t> counts;
                while(peek() == '[')
                {
                    expect('[');
                    counts.push_back(number());
                    expect(']');
                }
                // T[a][b] nests as a elements of T[b]
                for(auto it = counts.rbegin(); it != counts.rend(); ++it)
                    base = RecordSchema::fixedArray(*it, base);
                return base;
            }

            RecordSchema baseNode()
            {
                const std::string w = word();
                if(w == "Record")
                {
                    expect('{');
                    std::vector<std::pair<std::string, RecordSchema>> fields;
                    if(peek() != '}')
                    {
                        do
                        {
                            std::string tag = word();
                            expect(':');
                            fields.emplace_back(std::move(tag), node());
                        } while(consume(','));
                    }
                    expect('}');
                    return RecordSchema::record(std::move(fields));
                }
                return RecordSchema::leaf(parseScalar(w));
            }
        };
    } // namespace

    std::string RecordSchema::toString() const
    {
        std::ostringstream os;
        printNode(os, root_);
        return os.str();
    }

    RecordSchema RecordSchema::parse(std::string_view text)
    {
        SchemaParser p{text};
        RecordSchema s = p.node();
        p.skipWs();
        if(p.pos != text.size())
            throw std::invalid_argument(
                "schema parse error at position " + std::to_string(p.pos) + ": trailing characters");
        return s;
    }

    std::ostream& operator<<(std::ostream& os, const RecordSchema& s)
    {
        printNode(os, s.root());
        return os;
    }

    std::vector<std::pair<RecordCoord, Scalar>> flattenSchema(const RecordSchema& schema)
    {
        std::vector<std::pair<RecordCoord, Scalar>> out;
        out.reserve(schema.leafCount());
        for(const auto& d : schema.leaves())
            out.emplace_back(d.coord, d.type);
        return out;
    }

    LeafInfo leafInfo(const RecordSchema& schema, const RecordCoord& coord)
    {
        const std::size_t flat = schema.flatIndexOf(coord);
        const auto& d = schema.leaf(flat);
        return LeafInfo{d.type, flat, d.offsetPacked};
    }
} // namespace lamina
