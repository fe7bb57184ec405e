from views.cli.setconj_cli import setconj


def main():
    """
    Starts the setconj command line
    """
    setconj()


if __name__ == '__main__':
    main()
