"""
catforge のメインエントリーポイント
"""


def main():
    """メインエントリーポイント"""
    print("catforge")
    print("=" * 40)
    print("以下のコマンドが利用可能です：")
    print()
    print("1. 文書の公理検査:")
    print("   uv run catforge validate [document.json]")
    print()
    print("2. 厳密化・輪積・Ψ の構成:")
    print("   uv run catforge strictify|wreath|psi [document.json]")
    print()
    print("3. 環データと多関手:")
    print("   uv run catforge check-ring|build-multifunctor [ring.json]")
    print()
    print("4. 群完備化:")
    print("   uv run catforge group-complete|k0 [permutative.json]")
    print()
    print("5. 例の文書一式を書き出す:")
    print("   uv run catforge corpus [directory]")
    print()
    print("詳細はREADME.mdを参照してください。")


if __name__ == "__main__":
    main()
