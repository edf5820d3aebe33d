#ifndef GRIDKIT_GRID_PARTITION_HH
#define GRIDKIT_GRID_PARTITION_HH

#include <string>

#include <gridkit/common/exceptions.hh>

namespace gridkit
{

  enum class PartitionType { interior, border, overlap, front, ghost };

  //! partition sets that can be iterated, each containing the previous one
  enum class PartitionKind { interior, interiorBorder, overlap, overlapFront, all };

  inline bool contains ( PartitionKind kind, PartitionType type ) noexcept
  {
    switch( kind )
    {
    case PartitionKind::interior:
      return type == PartitionType::interior;
    case PartitionKind::interiorBorder:
      return type == PartitionType::interior || type == PartitionType::border;
    case PartitionKind::overlap:
      return type != PartitionType::front && type != PartitionType::ghost;
    case PartitionKind::overlapFront:
      return type != PartitionType::ghost;
    default:
      return true;
    }
  }

  inline std::string name ( PartitionType type )
  {
    switch( type )
    {
    case PartitionType::interior: return "interior";
    case PartitionType::border: return "border";
    case PartitionType::overlap: return "overlap";
    case PartitionType::front: return "front";
    default: return "ghost";
    }
  }

  inline std::string name ( PartitionKind kind )
  {
    switch( kind )
    {
    case PartitionKind::interior: return "interior";
    case PartitionKind::interiorBorder: return "interiorBorder";
    case PartitionKind::overlap: return "overlap";
    case PartitionKind::overlapFront: return "overlapFront";
    default: return "all";
    }
  }

  inline PartitionKind partitionKindFromName ( const std::string &s )
  {
    for( PartitionKind k : { PartitionKind::interior, PartitionKind::interiorBorder, PartitionKind::overlap,
                             PartitionKind::overlapFront, PartitionKind::all } )
      if( name( k ) == s )
        return k;
    throw DomainError( "unknown partition '" + s + "'" );
  }

} // namespace gridkit

#endif // GRIDKIT_GRID_PARTITION_HH
