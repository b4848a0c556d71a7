"""
代數計算套件

量子 sl2 表示論的精確計算核心：q 係數、線性代數、模、辮化冪、Poisson 閉包與 Veronese 代數。
"""
