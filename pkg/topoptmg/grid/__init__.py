from topoptmg.grid.hierarchy import GridLevel, GridHierarchy, build_hierarchy, prolongate, restrict, \
    bilinear_prolongation
