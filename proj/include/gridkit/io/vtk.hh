#ifndef GRIDKIT_IO_VTK_HH
#define GRIDKIT_IO_VTK_HH

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gridkit/common/exceptions.hh>
#include <gridkit/function/gridfunction.hh>
#include <gridkit/function/pointdata.hh>
#include <gridkit/grid/gridview.hh>
#include <gridkit/io/subsampling.hh>

namespace gridkit
{

  using NamedFunctions = std::vector< std::pair< std::string, GridFunction > >;

  namespace Impl
  {

    inline int vtkCellType ( GeometryType type )
    {
      switch( type.dim() )
      {
      case 0: return 1;
      case 1: return 3;
      case 2: return type.isSimplex() ? 5 : 9;
      default: return type.isSimplex() ? 10 : 12;
      }
    }

    //! vtk corner k is reference corner vtkCorner(type, k)
    inline int vtkCorner ( GeometryType type, int k )
    {
      static const int quad[] = { 0, 1, 3, 2 };
      static const int hex[] = { 0, 1, 3, 2, 4, 5, 7, 6 };
      if( type.isQuadrilateral() )
        return quad[ k ];
      if( type.isHexahedron() )
        return hex[ k ];
      return k;
    }

    inline void writeDataArray ( std::ostream &out, const std::string &name, const Array2 &values, int indent )
    {
      const std::string pad( indent, ' ' );
      out << pad << "<DataArray type=\"Float64\" Name=\"" << name << "\" NumberOfComponents=\"" << values.cols()
          << "\" format=\"ascii\">\n" << pad << "  ";
      for( std::size_t i = 0; i < values.data().size(); ++i )
        out << ( i ? " " : "" ) << values.data()[ i ];
      out << "\n" << pad << "</DataArray>\n";
    }

  } // namespace Impl

  /** \brief write an ASCII VTK unstructured grid file <name>.vtu
   *
   *  With subsampling s > 0 every element is split into 2^(s*dim) pieces
   *  and point data is sampled per element. Returns the file name.
   */
  inline std::string writeVTK ( const GridView &view, const std::string &name,
                                const NamedFunctions &pointData = {}, const NamedFunctions &cellData = {},
                                int subsampling = 0 )
  {
    std::set< std::string > labels;
    for( const auto *list : { &pointData, &cellData } )
      for( const auto &[ label, f ] : *list )
        if( !labels.insert( label ).second )
          throw DomainError( "writeVTK: duplicate data label '" + label + "'" );
    if( subsampling < 0 )
      throw DomainError( "writeVTK: negative subsampling level" );

    const int dim = view.dimension();
    std::vector< FieldVector > points;
    std::vector< std::vector< int > > cells;
    std::vector< GeometryType > cellTypes;
    std::vector< int > cellElement;

    if( subsampling == 0 )
    {
      const Array2 x = view.coordinates();
      for( std::size_t i = 0; i < x.rows(); ++i )
        points.emplace_back( x.row( i ) );
      const IndexSet indexSet = view.indexSet();
      for( const Entity &e : view.elements() )
      {
        cells.push_back( indexSet.subIndices( e, dim ) );
        cellTypes.push_back( e.type() );
        cellElement.push_back( e.id() );
      }
    }
    else
    {
      for( const Entity &e : view.elements() )
      {
        const RefinedReference ref = refineReference( e.type(), subsampling );
        const AffineGeometry geo = e.geometry();
        const int offset = static_cast< int >( points.size() );
        for( const auto &x : ref.points )
          points.push_back( geo.toGlobal( x ) );
        for( auto cell : ref.cells )
        {
          for( int &c : cell )
            c += offset;
          cells.push_back( std::move( cell ) );
          cellTypes.push_back( ref.cellType );
          cellElement.push_back( e.id() );
        }
      }
    }

    const std::string path = name + ".vtu";
    std::ofstream out( path );
    if( !out )
      throw IoError( "writeVTK: cannot open '" + path + "' for writing" );
    out << std::setprecision( 17 );
    out << "<?xml version=\"1.0\"?>\n"
        << "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" byte_order=\"LittleEndian\">\n"
        << "  <UnstructuredGrid>\n"
        << "    <Piece NumberOfPoints=\"" << points.size() << "\" NumberOfCells=\"" << cells.size() << "\">\n";

    out << "      <PointData>\n";
    for( const auto &[ label, f ] : pointData )
      Impl::writeDataArray( out, label, gridkit::pointData( f, subsampling ), 8 );
    out << "      </PointData>\n";

    out << "      <CellData>\n";
    for( const auto &[ label, f ] : cellData )
    {
      const auto elements = view.elements();
      std::vector< double > values;
      for( int element : cellElement )
      {
        const Entity e = elements[ element ];
        const auto y = f( e, e.referenceElement().center() );
        values.insert( values.end(), y.begin(), y.end() );
      }
      Impl::writeDataArray( out, label, Array2( cellElement.size(), f.rangeDimension(), std::move( values ) ), 8 );
    }
    out << "      </CellData>\n";

    out << "      <Points>\n"
        << "        <DataArray type=\"Float64\" NumberOfComponents=\"3\" format=\"ascii\">\n";
    for( const auto &x : points )
    {
      out << "          ";
      for( int k = 0; k < 3; ++k )
        out << ( k ? " " : "" ) << ( k < x.size() ? x[ k ] : 0.0 );
      out << "\n";
    }
    out << "        </DataArray>\n"
        << "      </Points>\n";

    out << "      <Cells>\n"
        << "        <DataArray type=\"Int64\" Name=\"connectivity\" format=\"ascii\">\n";
    for( std::size_t c = 0; c < cells.size(); ++c )
    {
      out << "          ";
      for( std::size_t k = 0; k < cells[ c ].size(); ++k )
        out << ( k ? " " : "" ) << cells[ c ][ Impl::vtkCorner( cellTypes[ c ], int( k ) ) ];
      out << "\n";
    }
    out << "        </DataArray>\n"
        << "        <DataArray type=\"Int64\" Name=\"offsets\" format=\"ascii\">\n          ";
    std::size_t offset = 0;
    for( std::size_t c = 0; c < cells.size(); ++c )
    {
      offset += cells[ c ].size();
      out << ( c ? " " : "" ) << offset;
    }
    out << "\n        </DataArray>\n"
        << "        <DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">\n          ";
    for( std::size_t c = 0; c < cells.size(); ++c )
      out << ( c ? " " : "" ) << Impl::vtkCellType( cellTypes[ c ] );
    out << "\n        </DataArray>\n"
        << "      </Cells>\n"
        << "    </Piece>\n"
        << "  </UnstructuredGrid>\n"
        << "</VTKFile>\n";
    if( !out )
      throw IoError( "writeVTK: error while writing '" + path + "'" );
    return path;
  }

} // namespace gridkit

#endif // GRIDKIT_IO_VTK_HH
