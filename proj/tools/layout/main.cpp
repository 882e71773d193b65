// SPDX-License-Identifier: Apache-2.0
#include <lamina/lamina.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace
{
    struct CommonArgs
    {
        std::string schemaText;
        std::string extentsText;
        std::vector<std::uint64_t> extentValues;
        std::string layout;
    };

    void addCommon(CLI::App& cmd, CommonArgs& args)
    {
        cmd.add_option("--schema", args.schemaText, "Record schema, e.g. 'Record{x: f64, y: f64}'")->required();
        cmd.add_option("--extents", args.extentsText, "Array extents, e.g. 'i64:[100]' or 'i32:[dyn,4]'")
            ->required();
        cmd.add_option("--extent", args.extentValues, "Value for one dynamic extent (repeatable, in order)");
        cmd.add_option("--layout", args.layout, "Layout name in the layout grammar")->required();
    }

    lamina::MappingPtr buildMapping(const CommonArgs& args)
    {
        const lamina::RecordSchema schema = lamina::RecordSchema::parse(args.schemaText);
        const lamina::ArrayExtents extents = lamina::ArrayExtents::parse(args.extentsText, args.extentValues);
        return lamina::parseLayout(args.layout, schema, extents);
    }

    void printInfo(const lamina::Mapping& m)
    {
        std::cout << "mapping: " << m.name() << '\n';
        std::cout << "schema: " << m.schema().toString() << '\n';
        std::cout << "extents: " << m.extents().toString() << '\n';
        std::cout << "elements: " << m.elementCount() << '\n';
        std::cout << "record size packed: " << m.schema().sizePacked() << '\n';
        std::cout << "record size aligned: " << m.schema().sizeAligned() << '\n';
        std::cout << "blobs: " << m.blobCount() << '\n';
        std::size_t total = 0;
        for(std::size_t nr = 0; nr < m.blobCount(); ++nr)
        {
            std::cout << "  blob " << nr << ": " << m.blobSize(nr) << " bytes\n";
            total += m.blobSize(nr);
        }
        std::cout << "total blob bytes: " << total << '\n';
        std::cout << "runtime state bytes: " << m.runtimeStateBytes() << '\n';
        std::cout << "leaves:\n";
        for(std::size_t f = 0; f < m.schema().leafCount(); ++f)
        {
            const auto& leaf = m.schema().leaf(f);
            std::cout << "  [" << f << "] " << leaf.path << ": " << lamina::scalarName(leaf.type)
                      << (m.isComputed(f) ? " (computed)" : "") << '\n';
        }
    }
} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Inspect layouts: sizes, offsets, dump and restore"};
    app.require_subcommand(1);

    CommonArgs infoArgs;
    auto* info = app.add_subcommand("info", "Print mapping name, blob sizes and leaf table");
    addCommon(*info, infoArgs);

    CommonArgs resolveArgs;
    std::uint64_t resolveIndex = 0;
    std::string resolveLeaf;
    auto* resolve = app.add_subcommand("resolve", "Resolve one (index, leaf) to blob and offset");
    addCommon(*resolve, resolveArgs);
    resolve->add_option("--index", resolveIndex, "Linearized element index")->required();
    resolve->add_option("--leaf", resolveLeaf, "Leaf path, e.g. 'Pos.x'")->required();

    CommonArgs dumpArgs;
    std::string dumpStem;
    auto* dump = app.add_subcommand("dump", "Write a zero-initialized view dump (sidecar + blob files)");
    addCommon(*dump, dumpArgs);
    dump->add_option("--stem", dumpStem, "Output path stem")->required();

    std::string restoreStem;
    auto* restore = app.add_subcommand("restore", "Read a view dump and print its summary");
    restore->add_option("--stem", restoreStem, "Input path stem")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch(const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if(info->parsed())
            printInfo(*buildMapping(infoArgs));
        else if(resolve->parsed())
        {
            const lamina::MappingPtr m = buildMapping(resolveArgs);
            const std::size_t flat = m->schema().flatIndexOf(m->schema().coordOf(resolveLeaf));
            if(m->isComputed(flat))
                std::cout << resolveLeaf << " @ " << resolveIndex << " -> computed\n";
            else
            {
                const auto [nr, off] = m->physicalOffset(resolveIndex, flat);
                std::cout << resolveLeaf << " @ " << resolveIndex << " -> blob " << nr << ", offset " << off
                          << '\n';
            }
        }
        else if(dump->parsed())
        {
            const lamina::View view(buildMapping(dumpArgs));
            lamina::writeViewDump(view, dumpStem);
            std::cout << "wrote " << dumpStem << ".meta and " << view.blobs().size() << " blob file(s)\n";
        }
        else if(restore->parsed())
        {
            const lamina::View view = lamina::readViewDump(restoreStem);
            printInfo(view.mapping());
        }
    }
    catch(const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
