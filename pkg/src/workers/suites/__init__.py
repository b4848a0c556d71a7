"""
驗證套件

每個模組提供一個 VerificationSuite，對應命令列 verify 的一個套件名稱。
"""
